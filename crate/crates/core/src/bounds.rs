//! Explicit numerology: the exponent c, the intersection and dilatation lower
//! bounds and the arithmetic relating tower height to intersection number.
//!
//! Transcendental values are computed with 80 significant decimal digits.

use std::str::FromStr;

pub use dashu_float::DBig;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working precision in decimal digits.
pub const DIGITS: usize = 80;

/// Lower bound on the log-dilatation that holds at every depth.
pub const FLOOR: &str = "0.197";

fn num(s: &str) -> DBig {
    DBig::from_str(s)
        .expect("decimal literal")
        .with_precision(DIGITS)
        .value()
}

fn int(n: u64) -> DBig {
    DBig::from(n).with_precision(DIGITS).value()
}

fn ratio(p: u64, q: u64) -> DBig {
    int(p) / int(q)
}

/// `ln(28/25) / ln 4`.
pub fn constant_c() -> DBig {
    ratio(28, 25).ln() / int(4).ln()
}

/// Decimal string with `digits` places after the point, truncated.
pub fn to_decimal(x: &DBig, digits: usize) -> String {
    let s = x.to_string();
    match s.find('.') {
        Some(p) => {
            let end = (p + 1 + digits).min(s.len());
            s[..end].to_string()
        }
        None => s,
    }
}

pub fn to_f64(x: &DBig) -> f64 {
    x.to_f64().value()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// The constant 0.197 dominates.
    Floor,
    /// The logarithmic expression dominates.
    Logarithmic,
    /// Single-formula bounds.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    pub input: u64,
    pub symbolic: String,
    pub decimal: String,
    pub branch: Branch,
    #[serde(skip)]
    pub value: Option<DBig>,
}

impl BoundReport {
    fn new(quantity: &str, input: u64, symbolic: String, value: DBig, branch: Branch) -> BoundReport {
        BoundReport {
            quantity: quantity.to_string(),
            input,
            symbolic,
            decimal: to_decimal(&value, 30),
            branch,
            value: Some(value),
        }
    }

    pub fn value(&self) -> DBig {
        self.value.clone().unwrap_or_else(|| num(&self.decimal))
    }
}

/// `((d+2)/2)^c`, the lower bound on intersection number for curves whose
/// classes agree modulo the d-th lower central series term.
pub fn isect_bound(d: u64, boundary: bool) -> Result<BoundReport> {
    let min = if boundary { 7 } else { 3 };
    if d < min {
        return Err(Error::Precondition(format!(
            "d = {d} is below the hypothesis d >= {min}"
        )));
    }
    let value = intersection_value(d);
    Ok(BoundReport::new(
        if boundary { "isect_boundary" } else { "isect" },
        d,
        format!("(({d}+2)/2)^c"),
        value,
        Branch::Direct,
    ))
}

fn intersection_value(d: u64) -> DBig {
    (ratio(d + 2, 2).ln() * constant_c()).exp()
}

/// `c ln((k+3)/2) - ln 2`.
pub fn log_branch(k: u64) -> DBig {
    constant_c() * ratio(k + 3, 2).ln() - int(2).ln()
}

/// `max(0.197, c ln((k+3)/2) - ln 2)`.
pub fn dil_bound(k: u64) -> Result<BoundReport> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let log = log_branch(k);
    let floor = num(FLOOR);
    let (value, branch) = if log > floor {
        (log, Branch::Logarithmic)
    } else {
        (floor, Branch::Floor)
    };
    Ok(BoundReport::new(
        "dil",
        k,
        format!("max(0.197, c*ln(({k}+3)/2) - ln 2)"),
        value,
        branch,
    ))
}

/// `ln(n/2)`: the log-dilatation bound when every curve meets its image at least n times.
pub fn self_crossing_dilatation(n: u64) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("n = {n} is below 3")));
    }
    Ok(BoundReport::new(
        "self_crossing_dil",
        n,
        format!("ln({n}/2)"),
        ratio(n, 2).ln(),
        Branch::Direct,
    ))
}

/// Smallest d with `((d+2)/2)^c > threshold`, by exponential then binary search.
pub fn isect_crossover(threshold: u64) -> u64 {
    // compare logarithms so each probe costs a single ln
    let c = constant_c();
    let t = int(threshold).ln();
    let above = |d: u64| ratio(d + 2, 2).ln() * &c > t;
    let mut hi = 1u64;
    while !above(hi) {
        hi *= 2;
    }
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Smallest k with the logarithmic branch strictly above `threshold`.
pub fn log_branch_crossover(threshold: &DBig) -> u64 {
    let c = constant_c();
    let shifted = threshold + int(2).ln();
    let above = |k: u64| ratio(k + 3, 2).ln() * &c > shifted;
    let mut hi = 1u64;
    while !above(hi) {
        hi *= 2;
    }
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn floor_value() -> DBig {
    num(FLOOR)
}

/// Exact test of `(28/25)^(k-1) <= n^2`, the height bound for n >= 2.
pub fn height_within_log_bound(k: u64, n: u64) -> bool {
    if k == 0 {
        return true;
    }
    let e = (k - 1) as u32;
    BigUint::from(28u32).pow(e) <= BigUint::from(n).pow(2) * BigUint::from(25u32).pow(e)
}

/// Largest tower height allowed for intersection number n.
pub fn height_bound(n: u64) -> u64 {
    if n <= 1 {
        return 3;
    }
    let mut k = 1;
    while height_within_log_bound(k + 1, n) {
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub checks: Vec<ChainCheck>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks relating the intersection number `n`, the tower height `k` and the
/// lower central series depth `d` of the witness word.
pub fn consistency_chain(n: u64, k: u64, d: u64) -> ChainReport {
    let mut checks = Vec::new();
    let kb = height_bound(n);
    checks.push(ChainCheck {
        name: "height".into(),
        holds: k <= kb,
        detail: format!("k = {k} <= {kb}"),
    });
    // the group-theoretic step needs 2^k - 1 >= 2 to say anything
    let cap = if k >= 64 { u64::MAX } else { ((1u64 << k) - 2).max(1) };
    checks.push(ChainCheck {
        name: "depth".into(),
        holds: d <= cap,
        detail: format!("d = {d} <= max(1, 2^{k} - 2) = {cap}"),
    });
    if n >= 2 {
        checks.push(ChainCheck {
            name: "exponent".into(),
            holds: height_within_log_bound(k, n),
            detail: format!("28^{} <= {n}^2 * 25^{}", k.saturating_sub(1), k.saturating_sub(1)),
        });
    }
    if d >= 3 {
        let bound = intersection_value(d);
        checks.push(ChainCheck {
            name: "inversion".into(),
            holds: int(n) >= bound,
            detail: format!("{n} >= (({d}+2)/2)^c = {}", to_decimal(&bound, 12)),
        });
    }
    ChainReport { n, k, d, checks }
}
