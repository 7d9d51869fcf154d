use std::path::PathBuf;

use thiserror::Error;

/// A malformed instance file.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    /// Non-integer weights are out of scope; reported apart so corpus runs
    /// can count them.
    #[error("line {line}: decimal weight {token:?} is not supported")]
    DecimalWeight { line: usize, token: String },
    #[error("line {line}: {source}")]
    Instance {
        line: usize,
        source: hare_core::Error,
    },
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum HareError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid generator settings: {0}")]
    Spec(String),
    #[error("internal error: {0}")]
    Internal(#[from] hare_core::Error),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Usage(String),
}

impl HareError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            HareError::Io { .. } => 1,
            HareError::Parse { .. } | HareError::Spec(_) | HareError::Usage(_) => 2,
            HareError::Internal(_) | HareError::VerifyFailed(_) => 3,
            HareError::Guard(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HareError::Io {
            path: path.into(),
            source,
        }
    }
}
