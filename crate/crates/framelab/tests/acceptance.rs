//! Acceptance criteria 1-11, one PASS/FAIL line each.
//!
//! Runs `framelab verify all` twice under one seed, groups the CSV report by
//! criterion and compares the two runs byte for byte. Exits 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

const SEED: u64 = 20240917;

const TITLES: [&str; 11] = [
    "frame algebra",
    "windowed Fourier lattice",
    "wavelet tight frame",
    "Bessel kernels",
    "phase-space norm",
    "conserved current",
    "effective mass",
    "non-relativistic limit",
    "spin coherent states",
    "analytic signal and X-ray",
    "determinism",
];

struct Run {
    code: Option<i32>,
    stdout: Vec<u8>,
    csv: Vec<u8>,
}

fn verify(dir: &std::path::Path, tag: &str) -> Run {
    let out = dir.join(format!("report-{tag}.csv"));
    let o = Command::new(env!("CARGO_BIN_EXE_framelab"))
        .args(["verify", "all", "--seed", &SEED.to_string(), "--out"])
        .arg(&out)
        .output()
        .expect("spawn framelab");
    Run { code: o.status.code(), stdout: o.stdout, csv: std::fs::read(&out).unwrap_or_default() }
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let a = verify(dir.path(), "a");
    let b = verify(dir.path(), "b");

    // criterion -> (checks, failed check descriptions)
    let mut by_crit: BTreeMap<u8, (usize, Vec<String>)> = BTreeMap::new();
    let text = String::from_utf8_lossy(&a.csv);
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            continue;
        }
        let Ok(c) = f[2].parse::<u8>() else { continue };
        let e = by_crit.entry(c).or_default();
        e.0 += 1;
        if f[6] != "pass" {
            e.1.push(format!("{}.{} = {} (needs {} {})", f[0], f[1], f[3], f[4], f[5]));
        }
    }

    let mut failed = 0;
    for (k, title) in TITLES.iter().enumerate() {
        let crit = (k + 1) as u8;
        let (ok, detail) = if crit == 11 {
            let same = !a.csv.is_empty() && a.csv == b.csv && a.stdout == b.stdout && a.code == b.code;
            (same, format!("{} report bytes, identical across two runs: {same}", a.csv.len()))
        } else {
            match by_crit.get(&crit) {
                None => (false, "no checks reported".to_string()),
                Some((n, fails)) if fails.is_empty() => (true, format!("{n}/{n} checks")),
                Some((n, fails)) => (false, format!("{}/{n} checks; {}", n - fails.len(), fails.join("; "))),
            }
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {crit:>2} {:<28} {}  {detail}", title, if ok { "PASS" } else { "FAIL" });
    }
    if let Some((n, fails)) = by_crit.get(&0) {
        println!("module invariants: {}/{n} checks", n - fails.len());
    }
    println!("acceptance: {}/11 criteria passed (verify exit status {:?})", 11 - failed, a.code);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
