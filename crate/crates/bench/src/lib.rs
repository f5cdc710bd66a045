//! Command-line harness around `mpm-core`: single solves, seeded campaigns,
//! ablations, exhaustive checks and instance generation.

pub mod cli;
pub mod commands;
pub mod digest;
pub mod error;
pub mod report;

pub use cli::Cli;
pub use error::CliError;
