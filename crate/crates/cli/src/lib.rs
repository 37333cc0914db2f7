//! Command-line front end: configuration, built-in scenarios, surface export
//! and reports.

pub mod config;
pub mod error;
pub mod presets;
pub mod report;
pub mod reproduce;
pub mod surface;
pub mod verify;

pub use config::{parse_config, GameConfig, OutputFormat};
pub use error::{CliError, Result};
