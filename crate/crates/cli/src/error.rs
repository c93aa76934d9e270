use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Sim(#[from] ams_detect::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// Process exit status: 2 for configuration problems, 3 for everything
    /// that went wrong while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Parse { .. } | HarnessError::Invalid(_) => 2,
            HarnessError::Sim(
                ams_detect::Error::InvalidConfig(_) | ams_detect::Error::Domain(_),
            ) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
