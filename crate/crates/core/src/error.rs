//! Error type shared by every module.

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A relaxed continued fraction hit a zero tail while evaluating.
    #[error("division by zero while evaluating continued fraction")]
    DivisionByZero,
    /// Inversion or elimination on a singular matrix.
    #[error("singular matrix")]
    SingularMatrix,
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Two routes that must agree disagreed; this is a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
