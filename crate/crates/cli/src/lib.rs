//! Library side of the `nilhecke` command: system files, word parsing, and
//! the reports printed by each subcommand.

pub mod commands;
pub mod error;
pub mod examples;
pub mod system;

pub use commands::Output;
pub use error::{CliError, CliResult};
