//! Error type shared across the library.

use std::fmt;

/// Errors surfaced by domain checks, solver preconditions and I/O.
#[derive(Debug)]
pub enum Error {
    /// Input outside an operation's mathematical domain.
    Domain(String),
    /// A solver precondition (grid resolution, range ordering, ...) is violated.
    Precondition(String),
    /// A numerical procedure failed (non-finite sample, no convergence).
    Numeric(String),
    /// Not enough data for the requested analysis.
    InsufficientData(String),
    /// Malformed or incomplete run configuration.
    Config(String),
    /// Filesystem failure while reading configs or emitting artifacts.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
            Error::InsufficientData(msg) => write!(f, "insufficient data: {msg}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
