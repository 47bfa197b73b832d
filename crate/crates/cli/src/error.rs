use std::fmt;

use casimir_friction::Error as CoreError;

/// Front-end failure, classified by exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Inputs outside the physical domain (exit 1).
    Validation(String),
    /// An oracle, tolerance or convergence failure (exit 2).
    Numeric(String),
    /// Unreadable or malformed configuration (exit 3).
    Config(String),
    /// Could not write output.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numeric(_) | CliError::Io(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain { .. }
            | CoreError::ZeroSeparation
            | CoreError::InvalidSpectrum(_)
            | CoreError::InvalidUnits(_)
            | CoreError::DivergentIntegral(_) => CliError::Validation(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
