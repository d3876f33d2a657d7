//! Command-line front end for the fluxon simulation library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{execute, run};
pub use config::{Cli, RunConfig};
pub use error::CliError;
