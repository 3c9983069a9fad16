use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is not connected")]
    Disconnected,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    /// True for errors caused by the caller's data rather than by limits.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Disconnected | Error::InvalidInput(_) | Error::Parse { .. } | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
