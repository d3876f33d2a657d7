use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),

    #[error("numerical failure: {0}")]
    Numerical(fluxon_core::Error),

    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<fluxon_core::Error> for CliError {
    fn from(e: fluxon_core::Error) -> Self {
        use fluxon_core::Error as E;
        match e {
            E::InvalidArgument(_) | E::SizeGuard { .. } => CliError::Usage(e.to_string()),
            E::NoConvergence { .. } | E::NonRepresentable { .. } | E::InvalidState(_) => {
                CliError::Numerical(e)
            }
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
