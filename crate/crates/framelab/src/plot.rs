use std::fs;
use std::path::{Path, PathBuf};

use crate::{fmt_f64, CliError};

/// A labelled plot axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: &str, values: Vec<f64>) -> Self {
        Self { name: name.to_string(), values }
    }

    fn describe(&self) -> String {
        match (self.values.first(), self.values.last()) {
            (Some(a), Some(b)) => format!("{} n={} first={} last={}", self.name, self.values.len(), fmt_f64(*a), fmt_f64(*b)),
            _ => format!("{} n=0", self.name),
        }
    }
}

pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

/// Writes `values[row][col]` as a bare CSV matrix and the axes to `<path>.meta`.
pub fn emit_plot_data(path: &Path, rows: &Axis, cols: &Axis, value: &str, values: &[Vec<f64>]) -> Result<(), CliError> {
    if values.is_empty() || values.iter().all(Vec::is_empty) {
        return Err(CliError::Compute("empty grid".into()));
    }
    if values.len() != rows.values.len() || values.iter().any(|r| r.len() != cols.values.len()) {
        return Err(CliError::Compute("grid is not rectangular or does not match its axes".into()));
    }
    if values.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::Compute("non-finite output".into()));
    }
    let mut out = String::new();
    for r in values {
        out.push_str(&r.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    let meta = format!("rows: {}\ncolumns: {}\nvalue: {value}\n", rows.describe(), cols.describe());
    fs::write(path, out).map_err(|e| CliError::io(path, e))?;
    let mp = meta_path(path);
    fs::write(&mp, meta).map_err(|e| CliError::io(&mp, e))
}
