//! Exact multivariate Tutte polynomials, binomial-type families and
//! partition-lattice Möbius functions.

pub mod error;
pub mod exactalg;

pub use error::{Error, Result};
pub use exactalg::{MultiPoly, Rational, TruncatedSeries, Truncation, Var};
pub mod binomial;
pub mod complete;
pub mod graphs;
pub mod identities;
pub mod mobius;
pub mod partitions;
pub mod report;
pub mod tutte;

pub use graphs::{MultiGraph, Weight};
pub use partitions::SetPartition;
pub use report::{Check, CheckReport};
