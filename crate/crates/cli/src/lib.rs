//! Command-line front end: JSON run configurations in, CSV tables out.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::path::PathBuf;

pub use commands::run_command;
pub use config::{load_config, parse_config, Command, GridSpec, Options, RunSpec};
pub use error::{CliError, Result};
pub use table::{emit_csv, ResultTable};

/// Runs `spec` and writes every table into its output directory.
pub fn execute(spec: &RunSpec) -> Result<Vec<PathBuf>> {
    let tables = run_command(spec)?;
    tables
        .iter()
        .map(|t| emit_csv(t, &spec.output_dir))
        .collect()
}
