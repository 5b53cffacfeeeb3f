use std::io;

use thiserror::Error;

/// Errors produced by the coordinate maps, the warp engine, image I/O and
/// the synthetic-target tools.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of a mapping.
    #[error("domain error: {0}")]
    Domain(String),
    /// A warp configuration that cannot be realized.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Malformed or mismatched call arguments.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Unsupported or corrupt file contents.
    #[error("format error: {0}")]
    Format(String),
    /// Feature detection on an image failed.
    #[error("detection failed: {0}")]
    Detection(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
