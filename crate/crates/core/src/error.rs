use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size or work budget was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A search that is guaranteed to succeed came back empty.
    #[error("contradiction: {0}")]
    Contradiction(String),
    /// The exact LP solver produced an inconsistent result.
    #[error("solver error: {0}")]
    Solver(String),
    #[error("invalid family file: {0}")]
    Parse(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(format!($($arg)*))
    };
}

macro_rules! ensure_domain {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Domain(format!($($arg)*)));
        }
    };
}

pub(crate) use domain;
pub(crate) use ensure_domain;
