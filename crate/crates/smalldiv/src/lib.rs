//! Command-line front end and file formats for `smalldiv-core`.

pub mod cli;
pub mod config;
pub mod exec;
pub mod numbers;
pub mod output;

pub use cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
pub use exec::RayonExecutor;
pub use output::{Cell, Format, Table};
