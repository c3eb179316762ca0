use std::process::ExitCode;

use spherelab::Error;

/// CLI failures, each mapped to its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;
pub const EXIT_IO: u8 = 5;

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Core(e) => match e {
                Error::Guard { .. } | Error::Overflow { .. } | Error::Quadrature(_) => {
                    EXIT_RESOURCE
                }
                Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::Parse(_) => EXIT_IO,
                _ => EXIT_DOMAIN,
            },
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}
