use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Core(#[from] syzlab_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 0 success, 1 usage or schema, 2 limit exceeded, 3 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) | CliError::Io { .. } => 1,
            CliError::Core(syzlab_core::Error::Invalid(_)) => 1,
            CliError::Core(syzlab_core::Error::Limit(_)) => 2,
            CliError::Core(syzlab_core::Error::Inconsistency(_)) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
