//! Configuration, verification suites and writers behind the `qcalc` command.

pub mod config;
pub mod error;
pub mod eval;
pub mod figure;
pub mod output;
pub mod report;
pub mod similarity;
pub mod suites;

pub use config::{Format, RunConfig};
pub use error::CliError;
pub use report::{CheckResult, Report};
pub use suites::{run_suite, Suite};
