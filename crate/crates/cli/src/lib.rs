//! File formats, parameter handling, sweeps and the command-line front end
//! for `casimir_friction`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod parallel;
pub mod params;
pub mod spectrum;
pub mod sweep;
pub mod table;
pub mod verify;

pub use cli::run;
pub use error::{CliError, CliResult};
