//! Command-line front end and JSON formats for `lrtrop-core`.
//!
//! - [`formats`]: JSON files for parameter tuples, exact matrices and seeds.
//! - [`checks`]: randomized and exhaustive checks shared by the binary and
//!   the acceptance suite.
//! - [`cli`]: the verbs of the `lrtrop` binary and their exit codes.

pub mod checks;
pub mod cli;
pub mod error;
pub mod formats;

pub use cli::{run, Output};
pub use error::{CliError, CliResult};
