//! Command-line front end for `pctf-core`.

pub mod commands;
pub mod input;
pub mod report;

use thiserror::Error;

/// Anything that stops a verb before it produces a report. All of these exit
/// with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: field `{field}`: {source}")]
    Semantic { path: String, field: String, source: pctf_core::Error },
    #[error("option --{name}: {message}")]
    Option { name: String, message: String },
    #[error(transparent)]
    Core(#[from] pctf_core::Error),
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;
}
