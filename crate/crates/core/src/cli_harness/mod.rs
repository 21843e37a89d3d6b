//! Command-line front end: run configuration, commands, report rendering
//! and the acceptance suites.
pub mod args;
pub mod classes;
pub mod commands;
pub mod suites;
pub use args::{Cli, RunConfig};
pub use commands::{run, Report};
pub use suites::{Outcome, Suites};
