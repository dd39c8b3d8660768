use std::path::PathBuf;

/// Errors raised anywhere in the link-budget engine.
///
/// Each variant maps onto one process exit code so the command-line front
/// end can report failures without inspecting messages.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A result is not representable in `f64`.
    #[error("range error: {0}")]
    Range(String),

    /// Numerical integration stopped before reaching the requested tolerance.
    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e} after {intervals} intervals")]
    Accuracy {
        estimate: f64,
        tolerance: f64,
        intervals: usize,
    },

    /// The caller combined options that cannot be honoured.
    #[error("usage error: {0}")]
    Usage(String),

    /// A validation run compared model and oracle and found them apart.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 usage, 2 domain, 3 accuracy/validation, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Domain(_) | Error::Range(_) => 2,
            Error::Accuracy { .. } | Error::Validation(_) => 3,
            Error::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
