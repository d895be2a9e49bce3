use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Slope zero, or a (0, 0) slope for length computations.
    #[error("invalid slope: {0}")]
    InvalidSlope(String),

    #[error("inconsistent modulus: {0}")]
    InconsistentModulus(String),

    /// Malformed input text (JSON syntax, non-integer entries, wrong shape).
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input that violates an algebraic invariant.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("missing cable data: {0}")]
    MissingCableData(String),

    /// A theorem hypothesis (such as n > 2 or d > 1) is not met.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Two independent evaluation routes disagreed.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
