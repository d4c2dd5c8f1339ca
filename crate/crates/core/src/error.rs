use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("resource cap exceeded: {entries} matrix entries (cap {cap})")]
    ResourceCap { entries: usize, cap: usize },
    #[error("brute-force enumeration too large: {size} group elements (cap {cap})")]
    BruteForceCap { size: u128, cap: u128 },
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("inconsistent surface model: {0}")]
    Model(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
