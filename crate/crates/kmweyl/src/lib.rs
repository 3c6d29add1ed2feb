//! Command-line front end for `kmweyl-core`.
//!
//! Every subcommand reads a [`config::RunConfig`], built from an optional
//! TOML file overlaid with command-line flags, and renders a deterministic
//! TSV or JSON report. Exit status is 0 on success, 2 for invalid input and
//! 3 when the computation itself fails (a pole, no recurrence).

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use error::{CliError, CliResult};
