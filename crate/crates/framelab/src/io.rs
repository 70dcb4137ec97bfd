//! Sampled signals and fields on disk.
//!
//! CSV rows are `t,re,im` (1-D) or `x1,..,xn,re,im`, one per grid point in
//! row-major order with axis 0 slowest. An optional header row and `#`
//! comments are skipped.
//!
//! raw64 is little-endian throughout: a 32-byte header (`FLB1`, `u32` number
//! of axes, `u64` number of samples, 16 reserved bytes), one 24-byte record
//! per axis (`u64` length, `f64` origin, `f64` spacing), then interleaved
//! `f64` re/im pairs.

use std::fs;
use std::path::Path;

use analytic_signal::{FieldSample, C64};
use windowed_fourier::SampledSignal;

use crate::{fmt_f64, CliError};

pub const MAGIC: &[u8; 4] = b"FLB1";
const HEADER: usize = 32;
const AXIS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Raw64,
}

impl Format {
    /// `.raw64` and `.bin` are binary, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("raw64") | Some("bin") => Format::Raw64,
            _ => Format::Csv,
        }
    }
}

pub fn read_signal(path: &Path, format: Format) -> Result<FieldSample, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let parsed = match format {
        Format::Csv => parse_csv(&bytes),
        Format::Raw64 => parse_raw64(&bytes),
    };
    parsed.map_err(|e| match e {
        CliError::Format(m) => CliError::Io { path: path.display().to_string(), message: m },
        other => other,
    })
}

pub fn write_signal(path: &Path, f: &FieldSample, format: Format) -> Result<(), CliError> {
    let bytes = match format {
        Format::Csv => csv_string(f).into_bytes(),
        Format::Raw64 => raw64_bytes(f),
    };
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// One-dimensional view of a field.
pub fn to_signal(f: &FieldSample) -> Result<SampledSignal, CliError> {
    if f.ndim() != 1 {
        return Err(CliError::Usage(format!("expected a 1-D signal, got {} axes", f.ndim())));
    }
    SampledSignal::new(f.values().to_vec(), f.origin()[0], f.spacing()[0]).map_err(CliError::compute)
}

pub fn parse_csv(bytes: &[u8]) -> Result<FieldSample, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(bytes);
    let mut rows: Vec<(u64, Vec<f64>)> = Vec::new();
    let mut width = None;
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Format(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let nums: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        let nums = match nums {
            Ok(n) => n,
            // a leading row of names is a header
            Err(_) if k == 0 && rec.iter().all(|s| s.parse::<f64>().is_err()) => {
                width = Some(rec.len());
                continue;
            }
            Err(_) => {
                let bad = rec.iter().find(|s| s.parse::<f64>().is_err()).unwrap_or("");
                return Err(CliError::Format(format!("line {line}: bad number `{bad}`")));
            }
        };
        let w = *width.get_or_insert(nums.len());
        if nums.len() != w {
            return Err(CliError::Format(format!("line {line}: expected {w} columns, got {}", nums.len())));
        }
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Format(format!("line {line}: non-finite entry")));
        }
        rows.push((line, nums));
    }
    if rows.is_empty() {
        return Err(CliError::Format("no samples".into()));
    }
    let w = rows[0].1.len();
    if !(3..=5).contains(&w) {
        return Err(CliError::Format(format!("line {}: need 1-3 coordinates plus re,im; got {w} columns", rows[0].0)));
    }
    let n = w - 2;
    let mut dims = Vec::with_capacity(n);
    let mut origin = Vec::with_capacity(n);
    let mut spacing = Vec::with_capacity(n);
    for d in 0..n {
        let mut c: Vec<f64> = rows.iter().map(|(_, r)| r[d]).collect();
        c.sort_by(f64::total_cmp);
        c.dedup();
        let len = c.len();
        dims.push(len);
        origin.push(c[0]);
        spacing.push(if len > 1 { (c[len - 1] - c[0]) / (len - 1) as f64 } else { 1.0 });
    }
    let total: usize = dims.iter().product();
    if total != rows.len() {
        return Err(CliError::Format(format!(
            "{} rows do not fill a {} grid",
            rows.len(),
            dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x")
        )));
    }
    let values: Vec<C64> = rows.iter().map(|(_, r)| C64::new(r[n], r[n + 1])).collect();
    let field = FieldSample::new(dims, origin, spacing, values).map_err(|e| CliError::Format(e.to_string()))?;
    for (i, (line, r)) in rows.iter().enumerate() {
        let p = field.point(i);
        for d in 0..n {
            if (r[d] - p[d]).abs() > 1e-6 * field.spacing()[d] {
                return Err(CliError::Format(format!("line {line}: point is off the row-major grid (axis {d}: {} vs {})", r[d], p[d])));
            }
        }
    }
    Ok(field)
}

pub fn csv_string(f: &FieldSample) -> String {
    let mut out = String::new();
    let names: Vec<String> =
        if f.ndim() == 1 { vec!["t".into()] } else { (1..=f.ndim()).map(|d| format!("x{d}")).collect() };
    out.push_str(&names.join(","));
    out.push_str(",re,im\n");
    for (i, v) in f.values().iter().enumerate() {
        for x in f.point(i) {
            out.push_str(&fmt_f64(x));
            out.push(',');
        }
        out.push_str(&fmt_f64(v.re));
        out.push(',');
        out.push_str(&fmt_f64(v.im));
        out.push('\n');
    }
    out
}

pub fn raw64_bytes(f: &FieldSample) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER + AXIS * f.ndim() + 16 * f.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(f.ndim() as u32).to_le_bytes());
    out.extend_from_slice(&(f.len() as u64).to_le_bytes());
    out.extend_from_slice(&[0u8; 16]);
    for d in 0..f.ndim() {
        out.extend_from_slice(&(f.dims()[d] as u64).to_le_bytes());
        out.extend_from_slice(&f.origin()[d].to_le_bytes());
        out.extend_from_slice(&f.spacing()[d].to_le_bytes());
    }
    for v in f.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().expect("8 bytes"))
}

fn f64_at(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().expect("8 bytes"))
}

pub fn parse_raw64(b: &[u8]) -> Result<FieldSample, CliError> {
    if b.is_empty() {
        return Err(CliError::Format("no samples".into()));
    }
    if b.len() < HEADER {
        return Err(CliError::Format(format!("header: need {HEADER} bytes, got {}", b.len())));
    }
    if &b[0..4] != MAGIC {
        return Err(CliError::Format("header: bad magic (expected FLB1)".into()));
    }
    let ndim = u32::from_le_bytes(b[4..8].try_into().expect("4 bytes")) as usize;
    if !(1..=3).contains(&ndim) {
        return Err(CliError::Format(format!("header: {ndim} axes, need 1-3")));
    }
    let n = u64_at(b, 8);
    if n == 0 {
        return Err(CliError::Format("no samples".into()));
    }
    let data_at = HEADER + AXIS * ndim;
    let want = (n as u128) * 16 + data_at as u128;
    if b.len() as u128 != want {
        return Err(CliError::Format(format!("size: expected {want} bytes for {n} samples, got {}", b.len())));
    }
    let mut dims = Vec::with_capacity(ndim);
    let mut origin = Vec::with_capacity(ndim);
    let mut spacing = Vec::with_capacity(ndim);
    for d in 0..ndim {
        let at = HEADER + AXIS * d;
        dims.push(u64_at(b, at) as usize);
        origin.push(f64_at(b, at + 8));
        spacing.push(f64_at(b, at + 16));
    }
    if dims.iter().map(|&d| d as u128).product::<u128>() != n as u128 {
        return Err(CliError::Format(format!("header: axis lengths {dims:?} do not multiply to {n}")));
    }
    if origin.iter().any(|o| !o.is_finite()) {
        return Err(CliError::Format("header: non-finite origin".into()));
    }
    let values: Vec<C64> =
        b[data_at..].chunks_exact(16).map(|c| C64::new(f64_at(c, 0), f64_at(c, 8))).collect();
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(CliError::Format("data: non-finite sample".into()));
    }
    FieldSample::new(dims, origin, spacing, values).map_err(|e| CliError::Format(format!("header: {e}")))
}
