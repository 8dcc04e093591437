//! Library side of the `bosescat` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod error;
pub mod fit;
pub mod output;
pub mod polarization;
pub mod profile;
pub mod scenario;
pub mod sweep;

pub use error::{CliError, CliResult};
