//! Explicit towers of regular double covers that resolve the crossings of a
//! pair of simple closed curves on a combinatorial surface, together with the
//! F2 homology, arc bookkeeping, searches for well-chosen functionals, monodromy and
//! Magnus-expansion tools needed to certify each step.

pub mod arcs;
pub mod bordered;
pub mod bounds;
pub mod certificate;
pub mod corpus;
pub mod covering;
pub mod error;
pub mod f2;
pub mod functional;
pub mod homology;
pub mod nilpotent;
pub mod surface;
pub mod tower;

pub use error::{Error, Result};
pub use f2::{Echelon, F2Matrix, F2Vector};
