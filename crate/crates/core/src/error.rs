use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("computation failed: {0}")]
    Failed(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn failed(msg: impl Into<String>) -> Self {
        Error::Failed(msg.into())
    }

    pub fn inconclusive(msg: impl Into<String>) -> Self {
        Error::Inconclusive(msg.into())
    }

    /// Process exit code: 1 failure, 2 inconclusive, 3 invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Failed(_) => 1,
            Error::Inconclusive(_) => 2,
            Error::Invalid(_) | Error::Unsupported(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Invalid(_) => "invalid",
            Error::Unsupported(_) => "unsupported",
            Error::Failed(_) => "failed",
            Error::Inconclusive(_) => "inconclusive",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
