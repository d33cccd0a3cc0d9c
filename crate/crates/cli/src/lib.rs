//! Scenario files, batch runs, CSV and SVG artifacts, and the `breakage`
//! command line.

pub mod app;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod run;
pub mod svg;

pub use error::{CliError, CliResult, Failure};
