//! Harvesting, file formats and command-line plumbing around
//! `altimpact-core`.

pub mod analyze;
pub mod commands;
pub mod fixture;
pub mod formats;
pub mod harvest;
pub mod ingest;
pub mod live;

pub use commands::{CliError, Outcome, RunConfig, Source};
