use thiserror::Error;

/// Errors raised by the weave library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeaveError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),
    #[error("naming refused: {0}")]
    NamingRefused(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, WeaveError>;
