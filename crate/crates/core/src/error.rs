use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (exit code 2 at the CLI boundary).
    #[error("input error: {0}")]
    Input(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    /// A quotient-membership query was made on a system whose confluence was never checked.
    #[error("reduction system has not been verified confluent")]
    Unverified,
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
