use thiserror::Error;

/// Name of the environment variable that caps brute-force subset enumeration.
pub const MAX_BRUTE_EDGES_ENV: &str = "TUTTE_MAX_BRUTE_EDGES";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands do not share a ground set, variable list or index.
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// A precondition on the input value failed.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    Range(String),
    /// A brute-force or enumeration cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A quantity that must vanish (or be independent of a variable) did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
