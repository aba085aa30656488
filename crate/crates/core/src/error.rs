use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed number at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    /// A partial quotient after the first was not positive.
    #[error("invalid continued fraction: quotient at index {index} must be >= 1")]
    InvalidRepresentation { index: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The caller's error bound reaches the uniqueness radius, so no recovery
    /// can be trusted.
    #[error("claimed error {claimed} is not below the uniqueness radius {radius}")]
    GuaranteeViolation { claimed: String, radius: String },

    #[error("bound {bound} exceeds the exhaustive-search limit {limit}")]
    Capacity { bound: u64, limit: u64 },

    #[error("line {line}: {message}")]
    Polynomial { line: usize, message: String },
}
