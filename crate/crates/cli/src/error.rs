//! Command failures and their process exit codes.

use std::path::PathBuf;

use thiserror::Error;

/// Exit code for I/O failures and invalid option combinations.
pub const EXIT_OTHER: u8 = 1;
/// Exit code for malformed input files.
pub const EXIT_PARSE: u8 = 3;
/// Exit code when a post-selected branch has zero probability.
pub const EXIT_PHYSICS: u8 = 4;
/// Exit code when the eigensolver does not converge.
pub const EXIT_CONVERGENCE: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A core failure while processing `context` (usually a file path).
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: nucc_core::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn core(context: impl Into<String>, source: nucc_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core { source, .. } if source.is_parse() => EXIT_PARSE,
            CliError::Core { source, .. } if source.is_physics() => EXIT_PHYSICS,
            CliError::Core {
                source: nucc_core::Error::NoConvergence { .. },
                ..
            } => EXIT_CONVERGENCE,
            _ => EXIT_OTHER,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
