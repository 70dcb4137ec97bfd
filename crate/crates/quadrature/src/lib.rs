//! Quadrature rules used across the workspace.
//!
//! Everything here integrates complex-valued integrands; real integrands go
//! through the same code with a zero imaginary part.

pub use num_complex::Complex64;

use std::f64::consts::PI;
use std::fmt;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "gauss_legendre needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss-Legendre nodes and weights mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&v| v * half).collect(),
    )
}

/// Trapezoid weights for `n` equispaced samples with spacing `h`.
pub fn trapezoid_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![h; n];
    if n > 1 {
        w[0] *= 0.5;
        w[n - 1] *= 0.5;
    }
    w
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel; returns (kronrod value, |kronrod - gauss|).
pub fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub panels: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuadError {
    /// Panel budget exhausted; carries the estimate reached so far.
    NotConverged { value: Complex64, error: f64 },
    InvalidInterval,
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NotConverged { value, error } => write!(
                f,
                "adaptive quadrature did not converge (value {value}, error estimate {error:e})"
            ),
            QuadError::InvalidInterval => write!(f, "integration interval is not finite"),
        }
    }
}

impl std::error::Error for QuadError {}

/// Globally adaptive Gauss-Kronrod (7/15) integration on [a, b].
///
/// Splits the panel with the largest error estimate until the summed estimate
/// drops below `max(abs_tol, rel_tol * |value|)` or `max_panels` is reached.
pub fn adaptive<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Integral, QuadError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval);
    }
    if a == b {
        return Ok(Integral { value: Complex64::new(0.0, 0.0), error: 0.0, panels: 0 });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let value: Complex64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if error <= abs_tol.max(rel_tol * value.norm()) {
            return Ok(Integral { value, error, panels: panels.len() });
        }
        if panels.len() >= max_panels {
            return Err(QuadError::NotConverged { value, error });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&mut f, pa, mid);
        let (v2, e2) = gk15(&mut f, mid, pb);
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
}

/// Real-valued convenience wrapper around [`adaptive`].
pub fn adaptive_real<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<f64, QuadError> {
    adaptive(|x| Complex64::new(f(x), 0.0), a, b, abs_tol, rel_tol, max_panels).map(|r| r.value.re)
}

/// Composite rule: adaptive integration over consecutive breakpoints.
pub fn adaptive_pieces<F: FnMut(f64) -> Complex64>(
    mut f: F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Integral, QuadError> {
    let mut total = Integral { value: Complex64::new(0.0, 0.0), error: 0.0, panels: 0 };
    let pieces = breaks.len().saturating_sub(1).max(1);
    for w in breaks.windows(2) {
        let r = adaptive(&mut f, w[0], w[1], abs_tol / pieces as f64, rel_tol, max_panels)?;
        total.value += r.value;
        total.error += r.error;
        total.panels += r.panels;
    }
    Ok(total)
}
