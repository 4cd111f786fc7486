//! Library side of the `burnside` command-line tool.

pub mod commands;
pub mod error;
pub mod output;
pub mod selector;
pub mod serial;
pub mod survey;

pub use error::{CliError, CliResult};
pub use output::{Format, Output};
pub use selector::Selector;
