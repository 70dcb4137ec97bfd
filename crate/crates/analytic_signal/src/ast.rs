use std::f64::consts::PI;

use num_complex::Complex64;
use quadrature::gk15;

use crate::field::{FieldSample, FieldSpectrum};
use crate::AstError;

type C64 = Complex64;

/// Boundary values above this fraction of `max |f|` count as insufficient decay.
pub const DECAY_TOL: f64 = 1e-8;

/// Unit step with the midpoint value at zero.
pub fn theta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Pseudo-exponential `theta(-Re zeta) e^zeta`.
pub fn pseudo_exp(zeta: C64) -> C64 {
    theta(-zeta.re) * zeta.exp()
}

fn check_direction(f: &FieldSample, x: &[f64], y: &[f64]) -> Result<(), AstError> {
    if x.len() != f.ndim() || y.len() != f.ndim() {
        return Err(AstError::Dimension(format!(
            "point has {} / {} components, grid has {}",
            x.len(),
            y.len(),
            f.ndim()
        )));
    }
    Ok(())
}

/// Analytic-signal transform evaluated from the DFT of the samples:
/// `f(x - iy) = sum_p dp theta(y.p) e^{-2 pi i (x - iy).p} f^(p)`.
#[derive(Clone, Debug)]
pub struct FourierAst {
    spectrum: FieldSpectrum,
    /// Largest |p| component per axis, used for the on-plane tolerance.
    pmax: f64,
}

impl FourierAst {
    pub fn new(f: &FieldSample) -> Self {
        let spectrum = FieldSpectrum::of(f);
        let pmax = spectrum.freqs.iter().flatten().fold(0.0f64, |m, p| m.max(p.abs()));
        FourierAst { spectrum, pmax }
    }

    /// Zero-pads every axis to `factor` times its length before transforming.
    ///
    /// The finer frequency grid reduces the error of the half-space sum, which
    /// is quadratic in the frequency spacing.
    pub fn padded(f: &FieldSample, factor: usize) -> Result<Self, AstError> {
        Ok(Self::new(&f.zero_padded(factor)?))
    }

    pub fn ndim(&self) -> usize {
        self.spectrum.dims.len()
    }

    pub fn spectrum(&self) -> &FieldSpectrum {
        &self.spectrum
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<C64, AstError> {
        let n = self.ndim();
        if x.len() != n || y.len() != n {
            return Err(AstError::Dimension(format!("expected {n} components")));
        }
        let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let plane_tol = 1e-12 * ynorm * self.pmax;
        // per-axis factors e^{-2 pi i (x_d - i y_d) p_d}
        let factors: Vec<Vec<C64>> = (0..n)
            .map(|d| {
                self.spectrum.freqs[d]
                    .iter()
                    .map(|&p| (C64::new(-2.0 * PI * y[d] * p, -2.0 * PI * x[d] * p)).exp())
                    .collect()
            })
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        for (i, v) in self.spectrum.values.iter().enumerate() {
            let idx = self.spectrum.unravel(i);
            let yp: f64 = (0..n).map(|d| y[d] * self.spectrum.freqs[d][idx[d]]).sum();
            let w = if yp.abs() <= plane_tol { 0.5 } else if yp > 0.0 { 1.0 } else { continue };
            let mut e = C64::new(w, 0.0);
            for d in 0..n {
                e *= factors[d][idx[d]];
            }
            acc += e * v;
        }
        Ok(acc * self.spectrum.dp)
    }
}

/// `f(z)` for `z = x - iy` of a one-dimensional field, by the Fourier method.
pub fn analytic_signal_1d(f: &FieldSample, z: C64) -> Result<C64, AstError> {
    if f.ndim() != 1 {
        return Err(AstError::Dimension("analytic_signal_1d needs a 1-D field".into()));
    }
    FourierAst::new(f).eval(&[z.re], &[-z.im])
}

/// Evaluation method for [`ast_eval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AstMethod {
    Fourier,
    Line,
}

pub fn ast_eval(f: &FieldSample, x: &[f64], y: &[f64], method: AstMethod) -> Result<C64, AstError> {
    check_direction(f, x, y)?;
    match method {
        AstMethod::Fourier => FourierAst::new(f).eval(x, y),
        AstMethod::Line => ast_line(f, x, y),
    }
}

/// Parameter interval on which `x - tau y` stays inside the grid box, with every
/// crossing of a grid plane as a breakpoint.
fn line_breaks(f: &FieldSample, x: &[f64], y: &[f64], sign: f64) -> Option<Vec<f64>> {
    let n = f.ndim();
    let upper = f.upper();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for d in 0..n {
        let v = sign * y[d];
        if v == 0.0 {
            if x[d] < f.origin()[d] - 1e-12 || x[d] > upper[d] + 1e-12 {
                return None;
            }
            continue;
        }
        let a = (f.origin()[d] - x[d]) / v;
        let b = (upper[d] - x[d]) / v;
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return None;
    }
    let mut breaks = vec![lo, hi];
    for d in 0..n {
        let v = sign * y[d];
        if v == 0.0 {
            continue;
        }
        for j in 0..f.dims()[d] {
            let t = (f.origin()[d] + j as f64 * f.spacing()[d] - x[d]) / v;
            if t > lo && t < hi {
                breaks.push(t);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + b.abs()));
    Some(breaks)
}

fn check_decay(f: &FieldSample, x: &[f64], y: &[f64], sign: f64, ends: [f64; 2]) -> Result<(), AstError> {
    let max = f.max_abs();
    for t in ends {
        let p: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + sign * t * b).collect();
        let v = f.interpolate(&p).norm();
        if v > DECAY_TOL * max {
            return Err(AstError::InsufficientDecay { value: v, max });
        }
    }
    Ok(())
}

/// `f(x - iy) = (1/2 pi i) int dtau f(x - tau y) / (tau - i)`.
///
/// The sampled field is interpolated by cubic convolution and taken as zero outside
/// its box, so it must already have decayed at the box faces.
pub fn ast_line(f: &FieldSample, x: &[f64], y: &[f64]) -> Result<C64, AstError> {
    check_direction(f, x, y)?;
    if y.iter().all(|&v| v == 0.0) {
        return Ok(f.interpolate_cubic(x) * 0.5);
    }
    let Some(breaks) = line_breaks(f, x, y, -1.0) else {
        return Ok(C64::new(0.0, 0.0));
    };
    check_decay(f, x, y, -1.0, [breaks[0], breaks[breaks.len() - 1]])?;
    let mut p = vec![0.0; x.len()];
    let mut integrand = |tau: f64| {
        for d in 0..x.len() {
            p[d] = x[d] - tau * y[d];
        }
        f.interpolate_cubic(&p) / C64::new(tau, -1.0)
    };
    let mut acc = C64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        acc += gk15(&mut integrand, w[0], w[1]).0;
    }
    Ok(acc / C64::new(0.0, 2.0 * PI))
}

/// Hilbert transform estimate with its extrapolation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HilbertEstimate {
    pub value: C64,
    pub error: f64,
}

/// `H_y f(x) = -i lim_{eps -> 0} [f(x + i eps y) - f(x - i eps y)]`, extrapolated
/// over `eps, eps/2, eps/4, eps/8` by Richardson's scheme.
///
/// `ast(x, y)` must return `f(x - iy)`. Fails when the last two extrapolants
/// differ by more than `tol` (absolute).
pub fn directional_hilbert<F>(ast: F, x: &[f64], y: &[f64], eps: f64, tol: f64) -> Result<HilbertEstimate, AstError>
where
    F: Fn(&[f64], &[f64]) -> Result<C64, AstError>,
{
    if y.iter().all(|&v| v == 0.0) {
        return Err(AstError::ZeroDirection);
    }
    if !(eps > 0.0) {
        return Err(AstError::Invalid("eps must be positive".into()));
    }
    const LEVELS: usize = 4;
    let mut table = [[C64::new(0.0, 0.0); LEVELS]; LEVELS];
    for (k, row) in table.iter_mut().enumerate() {
        let e = eps / (1 << k) as f64;
        let up: Vec<f64> = y.iter().map(|v| -e * v).collect();
        let down: Vec<f64> = y.iter().map(|v| e * v).collect();
        row[0] = C64::new(0.0, -1.0) * (ast(x, &up)? - ast(x, &down)?);
    }
    for j in 1..LEVELS {
        let fac = (1 << j) as f64;
        for k in j..LEVELS {
            table[k][j] = (table[k][j - 1] * fac - table[k - 1][j - 1]) / (fac - 1.0);
        }
    }
    let value = table[LEVELS - 1][LEVELS - 1];
    let error = (value - table[LEVELS - 1][LEVELS - 2]).norm();
    if !(error <= tol) {
        return Err(AstError::NonConvergent { estimate: value, error });
    }
    Ok(HilbertEstimate { value, error })
}

/// Finite-difference holomorphy check for `F(x, y) = f(x - iy)`.
#[derive(Clone, Debug)]
pub struct DbarReport {
    /// `dbar_mu F = (d/dx_mu - i d/dy_mu) F / 2` per axis.
    pub components: Vec<C64>,
    /// `|y^mu dbar_mu F|`, from derivatives along `y` only.
    pub directional: f64,
}

/// Central differences with step `h`; the directional part moves `x` along `y`
/// and rescales `y`, so it never rotates the half-space `y.p > 0`.
pub fn dbar_defect<F>(ast: F, x: &[f64], y: &[f64], h: f64) -> Result<DbarReport, AstError>
where
    F: Fn(&[f64], &[f64]) -> Result<C64, AstError>,
{
    let n = x.len();
    if y.len() != n {
        return Err(AstError::Dimension("x and y lengths differ".into()));
    }
    let shifted = |v: &[f64], d: usize, s: f64| {
        let mut w = v.to_vec();
        w[d] += s;
        w
    };
    let mut components = Vec::with_capacity(n);
    for d in 0..n {
        let dx = (ast(&shifted(x, d, h), y)? - ast(&shifted(x, d, -h), y)?) / (2.0 * h);
        let dy = (ast(x, &shifted(y, d, h))? - ast(x, &shifted(y, d, -h))?) / (2.0 * h);
        components.push((dx - C64::new(0.0, 1.0) * dy) * 0.5);
    }
    let along = |s: f64| -> Vec<f64> { x.iter().zip(y).map(|(a, b)| a + s * b).collect() };
    let scaled = |s: f64| -> Vec<f64> { y.iter().map(|b| (1.0 + s) * b).collect() };
    let dx = (ast(&along(h), y)? - ast(&along(-h), y)?) / (2.0 * h);
    let dy = (ast(x, &scaled(h))? - ast(x, &scaled(-h))?) / (2.0 * h);
    let directional = ((dx - C64::new(0.0, 1.0) * dy) * 0.5).norm();
    Ok(DbarReport { components, directional })
}
