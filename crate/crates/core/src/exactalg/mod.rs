//! Exact arithmetic: rationals, sparse polynomials and truncated power series.

pub mod combin;
pub mod poly;
pub mod series;
pub mod var;

pub use poly::{falling_factorial, format_rational, int, parse_rational, rat, rising_factorial, Monomial, MultiPoly, Rational};
pub use series::{TruncatedSeries, Truncation};
pub use var::Var;
