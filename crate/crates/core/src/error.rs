use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: cannot parse {text:?} as an ordinate")]
    Format {
        path: PathBuf,
        line: usize,
        text: String,
    },
    #[error("data integrity: {0}")]
    DataIntegrity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("coverage error: need zeros up to {needed}, table ends at {available}")]
    Coverage { needed: f64, available: f64 },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("accuracy error: achieved {achieved:.3e}, requested {requested:.3e} ({context})")]
    Accuracy {
        achieved: f64,
        requested: f64,
        context: String,
    },
    #[error("checksum mismatch: expected {expected}, got {actual}")]
    Checksum { expected: String, actual: String },
    #[error("download failed: {0}")]
    Download(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
