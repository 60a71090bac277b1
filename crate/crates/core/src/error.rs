use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid word: {0}")]
    Encoding(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("count store: {0}")]
    Store(String),

    #[error("unsupported store version: {0}")]
    StoreVersion(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("distributions are defined on different domains ({0} vs {1})")]
    DomainMismatch(String, String),

    #[error("correlation is undefined for constant input")]
    UndefinedCorrelation,

    #[error("empty selection: {0}")]
    EmptySelection(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn store(msg: impl Into<String>) -> Self {
        Error::Store(msg.into())
    }
}
