use thiserror::Error;

/// Failure classes; each maps to one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A configured size or order limit was exceeded.
    #[error("limit exceeded: {0}")]
    Limit(String),
    /// An identity that must hold failed: a proven bound, ∂² = 0, Molien agreement.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn limit(msg: impl Into<String>) -> Self {
        Error::Limit(msg.into())
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
