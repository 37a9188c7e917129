use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("series truncation failed: {0}")]
    Truncation(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("singular system: {0}")]
    Singular(String),
}

impl Error {
    /// Validation problems are the caller's fault; everything else is numeric.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
