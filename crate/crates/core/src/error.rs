use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid lens space L({p},{q}): need p > q > 0 and gcd(p, q) = 1")]
    InvalidLensSpace { p: u64, q: u64 },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("convention mismatch: expected {expected}, got {found}")]
    Convention { expected: &'static str, found: &'static str },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
