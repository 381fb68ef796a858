use std::path::PathBuf;
use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter is outside its admissible range (negative photon
    /// number, non-finite input, transmissivity outside (0, 1], ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller combined valid values incorrectly (mode index out of range,
    /// duplicate detection modes, malformed scenario, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A computation could not be carried out reliably (ill-conditioned
    /// covariance, stationary point of the signal, excessive truncation leak).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Verification checks ran but at least one failed.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the CLI: 1 verification failure,
    /// 2 usage/config, 3 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::Domain(_) | Error::Usage(_) | Error::Numerical(_) => 2,
            Error::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
