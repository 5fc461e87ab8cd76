//! Library side of the `evolving` command: input loading, analysis reports
//! and the corpus verification runs.

pub mod input;
pub mod report;
pub mod verify;

use evolving_groups::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Unreadable or malformed input, unknown names, bad arguments.
    pub const INPUT: u8 = 1;
    /// Some size cap was exceeded.
    pub const CAP: u8 = 2;
    /// A verification run found a failing entry.
    pub const FAILED: u8 = 3;
    /// Any other library error.
    pub const INTERNAL: u8 = 4;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => exit::INPUT,
            CliError::Group(e) => match e {
                GroupError::Parse { .. }
                | GroupError::UnknownEntry(_)
                | GroupError::NotBijection { .. }
                | GroupError::DegreeMismatch { .. }
                | GroupError::EmptyGenerators => exit::INPUT,
                GroupError::DegreeCapExceeded { .. }
                | GroupError::ClosureCapExceeded { .. }
                | GroupError::SubgroupCapExceeded { .. }
                | GroupError::OracleCapExceeded { .. } => exit::CAP,
                _ => exit::INTERNAL,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
