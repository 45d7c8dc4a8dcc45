//! File formats and subcommands of the `hypcascade` binary.

pub mod archive;
pub mod commands;
pub mod curves;
pub mod error;
pub mod output;
pub mod report;
pub mod svg;

pub use error::CliError;
