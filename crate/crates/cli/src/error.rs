use std::io;

use thiserror::Error;

/// Errors reported by the command line. Usage errors exit with status 1,
/// data errors with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

macro_rules! data_error {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Data(e.to_string())
            }
        })*
    };
}

data_error!(
    rxd_core::IdsError,
    rxd_core::MweError,
    rxd_core::AugmentError,
    rxd_core::BleuError,
    rxd_core::CorpusError
);
