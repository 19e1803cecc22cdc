use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] levysup::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 for anything the caller can fix by changing the request, 1 for
    /// numerical failure.
    pub fn exit_code(&self) -> u8 {
        use levysup::Error as L;
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(L::InvalidParameter(_) | L::UnsupportedModel(_) | L::AtomicLaw) => 2,
            CliError::Library(_) | CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
