//! Subcommand drivers, independent of the argument parser.
//!
//! Each driver returns the text for stdout and whether everything it checked
//! held; files named by `--out` are written as a side effect.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use analytic_signal::{
    directional_hilbert, xray_analyze_spectral, FieldSample, FourierAst, YGrid,
};
use wavelet::{build_meyer_pair, cwt_analyze_spectral, log_scales, spectrum, Smoothness, WaveletSpec};
use windowed_fourier::{spectrogram, wft_analyze, WindowSpec};

use crate::io::{read_signal, to_signal, write_signal, Format};
use crate::plot::{emit_plot_data, Axis};
use crate::suites::run_verify;
use crate::{fmt_f64, CliError, RunConfig};

type C64 = num_complex::Complex64;

/// What a command prints and whether it succeeded.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

impl Outcome {
    fn new(cfg: &RunConfig, lines: Vec<String>, ok: bool) -> Self {
        let mut stdout: String = cfg.header().iter().map(|h| format!("# {h}\n")).collect();
        for l in lines {
            stdout.push_str(&l);
            stdout.push('\n');
        }
        Outcome { stdout, ok }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn load(cfg: &RunConfig) -> Result<FieldSample, CliError> {
    let p = cfg.input()?;
    read_signal(p, Format::from_path(p))
}

fn no_tol(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.tol.keys().next() {
        Some(k) => Err(CliError::Usage(format!("{} takes no tolerances (got `{k}`)", cfg.command))),
        None => Ok(()),
    }
}

fn count(cfg: &RunConfig, key: &str, default: usize) -> Result<usize, CliError> {
    match cfg.params.usize(key, default)? {
        0 => Err(CliError::Usage(format!("{key} must be positive"))),
        n => Ok(n),
    }
}

/// Wavelet by name: mexican-hat, gaussian-derivative, meyer.
fn wavelet_named(name: &str) -> Result<WaveletSpec, CliError> {
    match name {
        "mexican-hat" => Ok(WaveletSpec::mexican_hat()),
        "gaussian-derivative" => Ok(WaveletSpec::gaussian_derivative()),
        "meyer" => build_meyer_pair(2.0, 1.0, Smoothness::Finite(3))
            .map(|p| WaveletSpec::from_meyer(&p, true))
            .map_err(CliError::compute),
        other => Err(CliError::Usage(format!(
            "unknown wavelet `{other}` (mexican-hat, gaussian-derivative, meyer)"
        ))),
    }
}

fn direction(cfg: &RunConfig, ndim: usize) -> Result<Vec<f64>, CliError> {
    let y = cfg.params.list("y")?.unwrap_or_else(|| {
        let mut v = vec![0.0; ndim];
        v[0] = 1.0;
        v
    });
    if y.len() != ndim {
        return Err(CliError::Usage(format!("y has {} components, the input has {ndim} axes", y.len())));
    }
    Ok(y)
}

fn with_values(f: &FieldSample, vals: Vec<C64>) -> Result<FieldSample, CliError> {
    FieldSample::new(f.dims().to_vec(), f.origin().to_vec(), f.spacing().to_vec(), vals).map_err(CliError::compute)
}

fn write_field(cfg: &RunConfig, f: &FieldSample) -> Result<Vec<String>, CliError> {
    match &cfg.output {
        Some(p) => {
            write_signal(p, f, Format::from_path(p))?;
            Ok(vec![format!("wrote: {}", p.display())])
        }
        None => Ok(vec![]),
    }
}

fn write_plot(cfg: &RunConfig, rows: &Axis, cols: &Axis, value: &str, data: &[Vec<f64>]) -> Result<Vec<String>, CliError> {
    match &cfg.output {
        Some(p) => {
            emit_plot_data(p, rows, cols, value, data)?;
            Ok(vec![format!("wrote: {} (+ .meta)", p.display())])
        }
        None => Ok(vec![]),
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Spectrogram `|f~(nu, s)|` of a 1-D signal.
pub fn wft(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.params.expect_keys(&["window", "tau", "fmin", "fmax", "nf", "stride"])?;
    no_tol(cfg)?;
    let f = to_signal(&load(cfg)?)?;
    let tau = cfg.params.f64("tau", 1.0)?;
    let h = match cfg.params.str_or("window", "bump") {
        "bump" => WindowSpec::smooth_bump(f.dt(), tau),
        "rect" => WindowSpec::rectangular(f.dt(), tau, 1.0),
        w => return Err(CliError::Usage(format!("unknown window `{w}` (bump, rect)"))),
    }
    .map_err(CliError::compute)?;
    let nyq = 0.5 / f.dt();
    let freqs = linspace(cfg.params.f64("fmin", -nyq)?, cfg.params.f64("fmax", nyq)?, count(cfg, "nf", 128)?);
    let stride = count(cfg, "stride", 8)?;
    let shifts: Vec<f64> = (0..f.len()).step_by(stride).map(|i| f.time(i)).collect();
    let g = wft_analyze(&f, &h, &freqs, &shifts).map_err(CliError::compute)?;
    let mag = spectrogram(&g);
    let peak = g.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut lines = vec![
        format!("samples: {}  dt: {}", f.len(), fmt_f64(f.dt())),
        format!("grid: {} frequencies x {} shifts", freqs.len(), shifts.len()),
        format!("max |coefficient|: {}", fmt_f64(peak)),
    ];
    lines.extend(write_plot(cfg, &Axis::new("frequency", freqs), &Axis::new("shift", shifts), "abs_wft", &mag)?);
    Ok(Outcome::new(cfg, lines, true))
}

/// Scalogram `|f~(a, s)|` of a 1-D signal, computed spectrally.
pub fn cwt(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.params.expect_keys(&["wavelet", "amin", "amax", "na", "stride"])?;
    no_tol(cfg)?;
    let f = to_signal(&load(cfg)?)?;
    let h = wavelet_named(cfg.params.str_or("wavelet", "mexican-hat"))?;
    let (amin, amax) = (cfg.params.f64("amin", 4.0 * f.dt())?, cfg.params.f64("amax", 0.25 * f.len() as f64 * f.dt())?);
    if !(amin > 0.0 && amax >= amin) {
        return Err(CliError::Usage("need 0 < amin <= amax".into()));
    }
    let scales = log_scales(amin, amax, count(cfg, "na", 48)?);
    let stride = count(cfg, "stride", 4)?;
    let shifts: Vec<f64> = (0..f.len()).step_by(stride).map(|i| f.time(i)).collect();
    let g = cwt_analyze_spectral(&spectrum(&f), &h, &scales, &shifts).map_err(CliError::compute)?;
    let mag: Vec<Vec<f64>> = g.values.chunks(shifts.len()).map(|r| r.iter().map(|z| z.norm()).collect()).collect();
    let (mut best, mut at) = (0.0f64, (0, 0));
    for (i, r) in mag.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            if *v > best {
                best = *v;
                at = (i, j);
            }
        }
    }
    let mut lines = vec![
        format!("wavelet: {}", h.name),
        format!("grid: {} scales x {} shifts", scales.len(), shifts.len()),
        format!("peak: |f~| = {} at a = {}, s = {}", fmt_f64(best), fmt_f64(scales[at.0]), fmt_f64(shifts[at.1])),
    ];
    lines.extend(write_plot(cfg, &Axis::new("scale", scales), &Axis::new("shift", shifts), "abs_cwt", &mag)?);
    Ok(Outcome::new(cfg, lines, true))
}

/// `f(x - iy)` at every grid point `x` for one direction `y`.
pub fn ast(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.params.expect_keys(&["y", "pad"])?;
    no_tol(cfg)?;
    let f = load(cfg)?;
    let y = direction(cfg, f.ndim())?;
    if y.iter().all(|v| *v == 0.0) {
        return Err(CliError::Usage("y must be nonzero".into()));
    }
    let fa = FourierAst::padded(&f, count(cfg, "pad", 4)?).map_err(CliError::compute)?;
    let vals = (0..f.len()).map(|i| fa.eval(&f.point(i), &y)).collect::<Result<Vec<C64>, _>>().map_err(CliError::compute)?;
    let out = with_values(&f, vals)?;
    let mut lines = vec![
        format!("grid: {:?}  y: {:?}", f.dims(), y),
        format!("max |f(x - iy)|: {}  max |f|: {}", fmt_f64(out.max_abs()), fmt_f64(f.max_abs())),
    ];
    lines.extend(write_field(cfg, &out)?);
    Ok(Outcome::new(cfg, lines, true))
}

/// Directional Hilbert transform from boundary values of the continuation.
pub fn hilbert(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.params.expect_keys(&["y", "pad", "eps"])?;
    let tol = cfg.tolerance("hilbert.extrapolation")?.unwrap_or(1e-6);
    if let Some(k) = cfg.tol.keys().find(|k| *k != "hilbert.extrapolation") {
        return Err(CliError::Usage(format!("unknown tolerance key `{k}` (hilbert.extrapolation)")));
    }
    let f = load(cfg)?;
    let y = direction(cfg, f.ndim())?;
    let fa = FourierAst::padded(&f, count(cfg, "pad", 4)?).map_err(CliError::compute)?;
    let min_step = f.spacing().iter().fold(f64::INFINITY, |a, b| a.min(*b));
    let eps = cfg.params.f64("eps", 2.0 * min_step)?;
    let mut vals = Vec::with_capacity(f.len());
    let mut worst = 0.0f64;
    for i in 0..f.len() {
        let h = directional_hilbert(|x, yy| fa.eval(x, yy), &f.point(i), &y, eps, f64::INFINITY)
            .map_err(CliError::compute)?;
        worst = worst.max(h.error);
        vals.push(h.value);
    }
    let ok = worst <= tol;
    let mut lines = vec![
        format!("grid: {:?}  y: {:?}  eps: {}", f.dims(), y, fmt_f64(eps)),
        format!("extrapolation error: {} (limit {}) {}", fmt_f64(worst), fmt_f64(tol), if ok { "PASS" } else { "FAIL" }),
    ];
    lines.extend(write_field(cfg, &with_values(&f, vals)?)?);
    Ok(Outcome::new(cfg, lines, ok))
}

/// Windowed X-ray transform `f_h(., y)` on the input grid for one `y`.
pub fn xray(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.params.expect_keys(&["y", "wavelet", "pad"])?;
    no_tol(cfg)?;
    let f = load(cfg)?;
    let y = direction(cfg, f.ndim())?;
    let h = wavelet_named(cfg.params.str_or("wavelet", "mexican-hat"))?;
    let grid = YGrid { points: vec![y.clone()], weights: vec![1.0] };
    let c = xray_analyze_spectral(&f, &h, &grid, count(cfg, "pad", 2)?).map_err(CliError::compute)?;
    let big = &c.fields[0];
    // cut the padded box back to the input grid
    let vals: Vec<C64> = (0..f.len()).map(|i| big.interpolate(&f.point(i))).collect();
    let out = with_values(&f, vals)?;
    let mut lines = vec![
        format!("wavelet: {}  y: {:?}", h.name, y),
        format!("max |f_h|: {}", fmt_f64(out.max_abs())),
    ];
    lines.extend(write_field(cfg, &out)?);
    Ok(Outcome::new(cfg, lines, true))
}

/// Bounds, metric inverse and reciprocal frame of a frame file.
pub fn frames(cfg: &RunConfig) -> Result<Outcome, CliError> {
    use frame_core::*;
    cfg.params.expect_keys(&[])?;
    let tol = cfg.tolerance("frames.dual")?.unwrap_or(1e-10);
    if let Some(k) = cfg.tol.keys().find(|k| *k != "frames.dual") {
        return Err(CliError::Usage(format!("unknown tolerance key `{k}` (frames.dual)")));
    }
    let p = cfg.input()?;
    let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
    let f = read_frame(&text).map_err(|e| CliError::io(p, e))?;
    let (a, b) = frame_bounds(&f).map_err(CliError::compute)?;
    let n = neumann_inverse(&f, NEUMANN_TOL, NEUMANN_MAX_TERMS).map_err(CliError::compute)?;
    let rec = reciprocal_frame(&f).map_err(CliError::compute)?;
    let d = f.dim();
    let mut res = nalgebra::DMatrix::<C64>::identity(d, d);
    for ((h, hr), &w) in f.vectors().iter().zip(rec.vectors()).zip(f.weights()) {
        res -= hr * h.adjoint() * C64::new(w, 0.0);
    }
    let defect = res.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let ok = defect < tol;
    let mut lines = vec![
        format!("dimension: {}  vectors: {}", d, f.len()),
        format!("bounds: A = {}  B = {}  B/A = {}", fmt_f64(a), fmt_f64(b), fmt_f64(b / a)),
        format!("neumann: {} terms, residual {}", n.terms_used, fmt_f64(n.residual)),
        format!("dual resolution defect: {} (limit {}) {}", fmt_f64(defect), fmt_f64(tol), if ok { "PASS" } else { "FAIL" }),
    ];
    if let Some(o) = &cfg.output {
        write_text(o, &write_frame(&rec))?;
        lines.push(format!("wrote: {} (reciprocal frame)", o.display()));
    }
    Ok(Outcome::new(cfg, lines, ok))
}

/// Kernel norm and effective mass over a range of `lambda`.
pub fn relcs(cfg: &RunConfig) -> Result<Outcome, CliError> {
    use relativistic_cs::*;
    cfg.params.expect_keys(&["m", "s", "c", "lmin", "lmax", "n"])?;
    no_tol(cfg)?;
    let c = cfg.params.f64("c", 1.0)?;
    let sh = MassShell::new(cfg.params.f64("m", 1.0)?, count(cfg, "s", 3)?)
        .and_then(|s| s.with_speed(c))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let (lmin, lmax) = (cfg.params.f64("lmin", 0.01)?, cfg.params.f64("lmax", 20.0)?);
    if !(lmin > 0.0 && lmax >= lmin) {
        return Err(CliError::Usage("need 0 < lmin <= lmax".into()));
    }
    let n = count(cfg, "n", 12)?;
    let mut table = String::from("lambda,norm_sq_closed,norm_sq_quadrature,effective_mass\n");
    let mut lines = vec![format!("shell: m = {}  s = {}  c = {}", fmt_f64(sh.mass()), sh.dim(), fmt_f64(sh.speed()))];
    let mut worst = 0.0f64;
    let mut ls = log_scales(lmin, lmax, n);
    // exact end points, not their round trip through exp(ln)
    ls[0] = lmin;
    if n > 1 {
        ls[n - 1] = lmax;
    }
    for l in ls {
        let c = ez_norm_sq(&sh, l, NormMethod::Closed).map_err(CliError::compute)?;
        let q = ez_norm_sq(&sh, l, NormMethod::Quadrature).map_err(CliError::compute)?;
        let me = effective_mass(&sh, l).map_err(CliError::compute)?;
        worst = worst.max((c / q - 1.0).abs());
        table.push_str(&format!("{},{},{},{}\n", fmt_f64(l), fmt_f64(c), fmt_f64(q), fmt_f64(me)));
    }
    lines.push(format!("lambda: {} values in [{}, {}]", n, fmt_f64(lmin), fmt_f64(lmax)));
    lines.push(format!("closed vs quadrature: max relative gap {}", fmt_f64(worst)));
    if let Some(o) = &cfg.output {
        write_text(o, &table)?;
        lines.push(format!("wrote: {}", o.display()));
    } else {
        lines.extend(table.lines().map(str::to_string));
    }
    Ok(Outcome::new(cfg, lines, true))
}

/// Spin coherent states: `overlap`, `resolution`, `expectations`, `contract`.
pub fn spincs(cfg: &RunConfig, mode: &str) -> Result<Outcome, CliError> {
    use spin_cs::*;
    no_tol(cfg)?;
    let spin = |default: f64| -> Result<SpinRep, CliError> {
        build_rep(cfg.params.f64("s", default)?).map_err(|e| CliError::Usage(e.to_string()))
    };
    let mut lines = Vec::new();
    match mode {
        "overlap" => {
            cfg.params.expect_keys(&["s", "n"])?;
            let r = spin(1.0)?;
            let n = count(cfg, "n", 64)?;
            let thetas = linspace(0.0, PI, n);
            let phis = linspace(0.0, 2.0 * PI, n);
            let base = spin_cs_vector(&r, &SphereLabel::new(0.0, 0.0).map_err(CliError::compute)?);
            let mut data = Vec::with_capacity(n);
            for &t in &thetas {
                let row = phis
                    .iter()
                    .map(|&p| {
                        let l = SphereLabel::new(t, p).map_err(CliError::compute)?;
                        Ok(base.dotc(&spin_cs_vector(&r, &l)).norm_sqr())
                    })
                    .collect::<Result<Vec<f64>, CliError>>()?;
                data.push(row);
            }
            lines.push(format!("spin: {}  |<h_n0|h_n>|^2 on {n} x {n} (theta, phi)", fmt_f64(r.spin())));
            lines.extend(write_plot(cfg, &Axis::new("theta", thetas), &Axis::new("phi", phis), "overlap", &data)?);
        }
        "resolution" => {
            cfg.params.expect_keys(&["s", "order", "radial"])?;
            let r = spin(0.5)?;
            let sphere = sphere_resolution_check(&r, count(cfg, "order", 16)?).map_err(CliError::compute)?;
            let holo = holo_resolution_check(&r, count(cfg, "radial", 160)?, r.twice_spin() + 2).map_err(CliError::compute)?;
            lines.push(format!("spin: {}", fmt_f64(r.spin())));
            for (name, rep) in [("sphere", sphere), ("holomorphic", holo)] {
                lines.push(format!(
                    "{name}: defect {}  off-diagonal {}  trace constant {}  nodes {}",
                    fmt_f64(rep.defect),
                    fmt_f64(rep.off_diagonal),
                    fmt_f64(rep.trace_constant),
                    rep.nodes
                ));
            }
        }
        "expectations" => {
            cfg.params.expect_keys(&["s", "n"])?;
            let r = spin(1.0)?;
            let n = count(cfg, "n", 19)?;
            let mut table = String::from("theta,re_s_plus,im_s_plus,s3,s_sq\n");
            for t in linspace(0.0, PI, n) {
                let l = SphereLabel::new(t, 0.0).map_err(CliError::compute)?;
                let h = spin_cs_vector(&r, &l);
                let sp = h.dotc(&(r.s_plus() * &h));
                let s3 = h.dotc(&(r.s3() * &h)).re;
                let sq = h.dotc(&(r.casimir() * &h)).re;
                table.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f64(t),
                    fmt_f64(sp.re),
                    fmt_f64(sp.im),
                    fmt_f64(s3),
                    fmt_f64(sq)
                ));
            }
            lines.push(format!("spin: {}", fmt_f64(r.spin())));
            match &cfg.output {
                Some(o) => {
                    write_text(o, &table)?;
                    lines.push(format!("wrote: {}", o.display()));
                }
                None => lines.extend(table.lines().map(str::to_string)),
            }
        }
        "contract" => {
            cfg.params.expect_keys(&["s", "nmax"])?;
            let r = spin(200.0)?;
            let c = contraction_defect(&r, cfg.params.usize("nmax", 3)?);
            lines.push(format!("spin: {}", fmt_f64(r.spin())));
            lines.push("n,ladder_plus,ladder_minus,k3".into());
            let col = |m: &Vec<Vec<f64>>, n: usize| m.iter().map(|r| r[n]).fold(0.0f64, f64::max);
            for n in 0..c.k3.len() {
                lines.push(format!("{n},{},{},{}", fmt_f64(col(&c.plus, n)), fmt_f64(col(&c.minus, n)), fmt_f64(c.k3[n])));
            }
            lines.push(format!("max ladder: {}  max k3: {}", fmt_f64(c.max_ladder()), fmt_f64(c.max_k3())));
        }
        m => return Err(CliError::Usage(format!("unknown spincs mode `{m}` (overlap, resolution, expectations, contract)"))),
    }
    Ok(Outcome::new(cfg, lines, true))
}

/// Runs a verification suite; the text table goes to stdout, CSV to `--out`.
pub fn verify(cfg: &RunConfig, suite: &str) -> Result<Outcome, CliError> {
    let report = run_verify(cfg, suite)?;
    if let Some(o) = &cfg.output {
        write_text(o, &report.csv())?;
    }
    Ok(Outcome { stdout: report.text(), ok: report.passed() })
}
