//! Command-line layer for `vortexprox`: the JSON complex document, the
//! report format and one entry point per subcommand.

pub mod commands;
pub mod document;
mod error;
pub mod report;

pub use error::CliError;
