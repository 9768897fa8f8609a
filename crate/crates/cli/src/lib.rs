//! JSON formats and the `posetrep` command line.

pub mod app;
pub mod format;
pub mod report;

pub use app::{run, Cli, CliError, Outcome};
