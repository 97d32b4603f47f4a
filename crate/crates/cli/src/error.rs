use std::path::PathBuf;

use thiserror::Error;

use crate::format::ParseError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },

    #[error(transparent)]
    Core(#[from] ccsc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use ccsc_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Parse { .. } => EXIT_FAILURE,
            CliError::Core(E::BudgetExceeded { .. } | E::RejectionBudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Core(E::UnknownAlgorithm(_)) => EXIT_USAGE,
            CliError::Core(_) => EXIT_FAILURE,
        }
    }

    /// A follow-up suggestion printed after the error, if any.
    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(ccsc_core::Error::NonIntegerRho) => {
                Some("rerun with `--algorithm line-dp`, which handles rational values exactly")
            }
            CliError::Core(ccsc_core::Error::BudgetExceeded { .. }) => {
                Some("raise the enumeration cap with the CC_BUDGET environment variable")
            }
            CliError::Core(ccsc_core::Error::UnknownAlgorithm(_)) => Some(
                "available algorithms: line-dp, line-klink, tree-dp, grid-laminar, grid-bicriterial, oracle, auto",
            ),
            _ => None,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
