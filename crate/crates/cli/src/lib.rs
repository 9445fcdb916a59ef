//! Configuration parsing, subcommand dispatch and CSV output for `kerramp`.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{operating_point, run, Command};
pub use config::{parse_config, ConfigError, RunConfig};
pub use output::{Cell, Table};
