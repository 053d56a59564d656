use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rational function is not expandable as a power series in t: {0}")]
    NotExpandable(String),
    #[error("enumeration budget of {budget} cone points exceeded")]
    BudgetExceeded { budget: usize },
    #[error("exponent does not fit in a machine integer: {0}")]
    Overflow(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
