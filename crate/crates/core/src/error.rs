use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Result not representable (denominator underflow, infinite coordinate).
    #[error("overflow: {0}")]
    Overflow(String),

    /// Index outside the admissible range.
    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// Request exceeds what the evaluator supports.
    #[error("unsupported size: {0}")]
    Unsupported(String),

    /// A documented precondition failed; the message names the inequality.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
