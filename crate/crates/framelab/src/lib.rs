//! Library side of the `framelab` command: file formats, plot output,
//! report tables, the verification suites and the subcommand drivers.

pub mod commands;
pub mod config;
pub mod io;
pub mod plot;
pub mod report;
pub mod suites;

pub use config::{KeyValues, RunConfig};
pub use io::{read_signal, to_signal, write_signal, Format};
pub use plot::{emit_plot_data, Axis};
pub use report::{Check, Relation, Report};
pub use suites::{run_verify, SUITES};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }

    pub(crate) fn compute(e: impl std::fmt::Display) -> Self {
        CliError::Compute(e.to_string())
    }

    pub(crate) fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        CliError::Io { path: path.display().to_string(), message: e.to_string() }
    }
}

/// Shortest text that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
