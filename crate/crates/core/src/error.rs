use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("curves are not transverse: {0}")]
    NotTransverse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cycle does not separate the surface")]
    NonSeparating,

    #[error("cycle is not embedded: {0}")]
    NotEmbedded(String),

    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u64, cap: u64 },

    #[error("coboundary cocycle gives a disconnected cover")]
    CoboundaryCocycle,

    #[error("search exhausted without a witness: {0}")]
    SearchExhausted(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
