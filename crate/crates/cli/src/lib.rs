//! Job parsing, dispatch, and reporting for the `homolog` command line tool.

pub mod axioms;
pub mod entry;
pub mod error;
pub mod jobspec;
pub mod report;
pub mod runner;

pub use error::CliError;
pub use jobspec::{canonical_jobspec, parse_jobspec, JobSpec};
pub use report::Report;
pub use runner::{run, run_text, RunOptions};
