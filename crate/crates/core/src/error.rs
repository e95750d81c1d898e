//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum AseError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("adaptive filter diverged: {0}")]
    Diverged(String),
    #[error("numeric abort: {0}")]
    NumericAbort(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl AseError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        AseError::InvalidArgument(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        AseError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, AseError>;
