use std::path::PathBuf;

use crate::CliError;

/// Ordered `key=value` pairs from repeated flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KeyValues {
    pairs: Vec<(String, String)>,
}

impl KeyValues {
    pub fn parse(items: &[String]) -> Result<Self, CliError> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for item in items {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{item}`")))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(CliError::Usage(format!("empty key in `{item}`")));
            }
            if pairs.iter().any(|(p, _)| p == k) {
                return Err(CliError::Usage(format!("key `{k}` given twice")));
            }
            pairs.push((k.to_string(), v.trim().to_string()));
        }
        Ok(Self { pairs })
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.pairs.iter().map(|(k, _)| k.as_str())
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        for k in self.keys() {
            if !allowed.contains(&k) {
                return Err(CliError::Usage(format!("unknown parameter `{k}` (accepted: {})", allowed.join(", "))));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => parse_f64(key, v),
        }
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key).map(|v| parse_f64(key, v)).transpose()
    }

    pub fn usize(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Usage(format!("{key}: expected a non-negative integer, got `{v}`"))),
        }
    }

    /// Comma-separated numbers.
    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        self.get(key).map(|v| v.split(',').map(|s| parse_f64(key, s.trim())).collect()).transpose()
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    /// `k=v; k=v` in input order, for report headers.
    pub fn echo(&self) -> String {
        if self.pairs.is_empty() {
            return "(none)".into();
        }
        self.pairs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join("; ")
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::Usage(format!("{key}: expected a finite number, got `{v}`"))),
    }
}

/// Everything a subcommand needs besides its own positional arguments.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub tol: KeyValues,
    pub params: KeyValues,
}

impl RunConfig {
    pub fn input(&self) -> Result<&PathBuf, CliError> {
        self.input.as_ref().ok_or_else(|| CliError::Usage(format!("{} needs --in", self.command)))
    }

    /// Header lines shared by every report.
    pub fn header(&self) -> Vec<String> {
        let mut h = vec![format!("framelab {}", self.command), format!("seed: {}", self.seed)];
        h.push(format!("params: {}", self.params.echo()));
        h.push(format!("tol: {}", self.tol.echo()));
        h
    }

    /// Tolerance overrides must be positive.
    pub fn tolerance(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.tol.f64_opt(key)? {
            Some(t) if t <= 0.0 => Err(CliError::Usage(format!("tolerance {key} must be positive"))),
            t => Ok(t),
        }
    }
}
