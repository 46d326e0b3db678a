//! Error type shared across the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    Domain(String),
    /// The descriptor kind does not support the requested operation.
    Capability(String),
    /// A fiber scan could not resolve the requested structure.
    FiberResolution(String),
    /// Command line / configuration problems.
    Usage(String),
    /// Output could not be written.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Capability(m) => write!(f, "capability error: {m}"),
            Error::FiberResolution(m) => write!(f, "fiber resolution error: {m}"),
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
