//! Exact counting of k-subsets of `F_p*` by the sum of their m-th powers,
//! Waring numbers mod `p`, and verification of the explicit bounds that
//! govern these counts.
//!
//! Counts are arbitrary-precision integers produced by three independent
//! algorithms (see [`counters`]). Real-valued bounds are evaluated as
//! rigorous enclosures (see [`real`]) so a verdict never depends on rounding.

pub mod bounds;
pub mod cli;
pub mod combinatorics;
pub mod counters;
pub mod error;
pub mod field;
pub mod real;
pub mod report;
pub mod waring;

pub use error::{Error, Result};
pub use field::{PowerResidueStructure, PrimeModulus};
