//! Command-line harness: JSON I/O, truncation doubling and the seeded
//! verification suites.

pub mod commands;
pub mod config;
pub mod convergence;
pub mod error;
pub mod suites;

pub use commands::{execute, Command, Outcome};
pub use config::RunConfig;
pub use error::CliError;
pub use suites::{run_suite, Suite, SuiteReport};
