//! File formats, reports and the command-line driver for `mostset-core`.

pub mod error;
pub mod format;
pub mod report;
pub mod run;
pub mod selftest;

pub use error::CliError;
pub use report::{Format, Report};
pub use run::{run, FileSystem, Outcome, Source, MAX_STATES_VAR};
