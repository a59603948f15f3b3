use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("incompatible forms: {0}")]
    Incompatible(String),
    #[error("indeterminate numerical rank: {0}")]
    IndeterminateRank(String),
    #[error("point is not normalized: {0}")]
    Normalization(String),
    #[error("not a transvection direction: relative isotropy component {0:e}")]
    NotTransvection(f64),
    #[error("characteristic angle undefined: {0}")]
    UndefinedAngle(String),
    #[error("quaternionic structure violated: {0}")]
    Structure(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("embedding rejected: {0}")]
    Embedding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
