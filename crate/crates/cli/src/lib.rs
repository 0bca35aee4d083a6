//! Command implementations behind the `qthermo` binary.

pub mod config;
pub mod figures;
pub mod run;
pub mod svg;
pub mod table;

use thiserror::Error;

pub use config::{BetaSpec, CommandKind, Format, GridSpec, RunConfig};
pub use run::{execute, Check, Report};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Numerical(_) => exit::NUMERICAL,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl From<qthermo::Error> for CliError {
    fn from(e: qthermo::Error) -> Self {
        use qthermo::Error as E;
        match e {
            E::RadiusExceeded { .. }
            | E::BoundaryPoint { .. }
            | E::DimensionMismatch { .. }
            | E::DomainExceeded { .. }
            | E::InvalidParameter(_) => CliError::Usage(e.to_string()),
            E::NotHermitian { .. }
            | E::SingularState { .. }
            | E::ToleranceNotReached { .. }
            | E::Overflow { .. } => CliError::Numerical(e.to_string()),
        }
    }
}
