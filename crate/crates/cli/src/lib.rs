//! Command-line front end for the `darkbright` simulator: configuration
//! parsing, the four run modes and deterministic CSV output.

pub mod args;
pub mod complex;
pub mod config;
pub mod csv;
pub mod error;
pub mod run;

pub use args::Args;
pub use config::{CSpec, Coupling, DeltaRange, Mode, RunConfig, Source};
pub use error::CliError;
pub use run::{run, Artifacts};
