use std::f64::consts::PI;

use rustfft::FftPlanner;
use windowed_fourier::SampledSignal;

use crate::{CsError, C64};

/// Label points `z` with plain area weights `dx dp` (or `dx dy`).
///
/// The measure density is applied by the functions that use the grid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LabelGrid {
    pub points: Vec<C64>,
    pub weights: Vec<f64>,
}

impl LabelGrid {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Trapezoid grid on `[-half, half]^2` with `n` points per side, `z = a - ib`.
    pub fn square(half: f64, n: usize) -> Result<Self, CsError> {
        Self::rectangle((-half, half), (-half, half), n, n)
    }

    /// Trapezoid grid over `re in re_range`, `-im in im_range`.
    pub fn rectangle(re_range: (f64, f64), im_range: (f64, f64), n_re: usize, n_im: usize) -> Result<Self, CsError> {
        if n_re < 2 || n_im < 2 || !(re_range.1 > re_range.0) || !(im_range.1 > im_range.0) {
            return Err(CsError::Grid(format!("bad label grid {re_range:?} x {im_range:?}")));
        }
        let da = (re_range.1 - re_range.0) / (n_re - 1) as f64;
        let db = (im_range.1 - im_range.0) / (n_im - 1) as f64;
        let wa = quadrature::trapezoid_weights(n_re, da);
        let wb = quadrature::trapezoid_weights(n_im, db);
        let mut points = Vec::with_capacity(n_re * n_im);
        let mut weights = Vec::with_capacity(n_re * n_im);
        for (i, wi) in wa.iter().enumerate() {
            for (j, wj) in wb.iter().enumerate() {
                points.push(C64::new(re_range.0 + i as f64 * da, -(im_range.0 + j as f64 * db)));
                weights.push(wi * wj);
            }
        }
        Ok(LabelGrid { points, weights })
    }

    /// Points of [`LabelGrid::square`] with `|z| <= radius`.
    pub fn disk(radius: f64, n: usize) -> Result<Self, CsError> {
        let sq = Self::square(radius, n)?;
        let (points, weights) = sq.points.iter().zip(&sq.weights).filter(|(z, _)| z.norm() <= radius).map(|(z, w)| (*z, *w)).unzip();
        Ok(LabelGrid { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `int dx conj(f) g` by the trapezoid rule; both signals must share one grid.
pub fn inner(f: &SampledSignal, g: &SampledSignal) -> Result<C64, CsError> {
    same_grid(f, g)?;
    let w = quadrature::trapezoid_weights(f.len(), f.dt());
    Ok(f.samples().iter().zip(g.samples()).zip(&w).map(|((a, b), w)| a.conj() * b * *w).sum())
}

pub(crate) fn same_grid(f: &SampledSignal, g: &SampledSignal) -> Result<(), CsError> {
    if f.len() != g.len() || (f.t0() - g.t0()).abs() > 1e-12 * f.dt() || (f.dt() - g.dt()).abs() > 1e-12 * f.dt() {
        return Err(CsError::Grid("signals are on different grids".into()));
    }
    Ok(())
}

/// `d psi / dx` by FFT, treating the samples as one period.
pub fn spectral_derivative(psi: &SampledSignal) -> SampledSignal {
    let n = psi.len();
    let mut buf = psi.samples().to_vec();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let period = n as f64 * psi.dt();
    for (k, v) in buf.iter_mut().enumerate() {
        let s = if 2 * k > n { k as i64 - n as i64 } else { k as i64 };
        // the Nyquist mode has no odd partner
        *v = if 2 * k == n { C64::new(0.0, 0.0) } else { *v * C64::new(0.0, 2.0 * PI * s as f64 / period) };
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    SampledSignal::new(buf.into_iter().map(|v| v * scale).collect(), psi.t0(), psi.dt()).expect("same grid")
}

/// Expectations and spreads of a normalized-on-the-fly state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub norm_sqr: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub delta_x: f64,
    pub delta_p: f64,
}

impl Moments {
    pub fn uncertainty_product(&self) -> f64 {
        self.delta_x * self.delta_p
    }
}

/// `(int w |f|^2, <t>, Var t)` under the weight `|f|^2`.
fn plain_moments(f: &SampledSignal) -> Result<(f64, f64, f64), CsError> {
    let w = quadrature::trapezoid_weights(f.len(), f.dt());
    let mut m0 = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (i, (v, w)) in f.samples().iter().zip(&w).enumerate() {
        let t = f.time(i);
        let d = v.norm_sqr() * w;
        m0 += d;
        m1 += d * t;
        m2 += d * t * t;
    }
    if !(m0 > 0.0) {
        return Err(CsError::ZeroNorm);
    }
    let mean = m1 / m0;
    Ok((m0, mean, (m2 / m0 - mean * mean).max(0.0)))
}

/// `(<D>, <D^2>)` for `D = c d/dt` with `c = -i` or `i`, using the spectral derivative.
fn derivative_moments(f: &SampledSignal, c: C64, norm: f64) -> (f64, f64) {
    let d = spectral_derivative(f);
    let w = quadrature::trapezoid_weights(f.len(), f.dt());
    let mut first = C64::new(0.0, 0.0);
    let mut second = 0.0;
    for ((v, dv), w) in f.samples().iter().zip(d.samples()).zip(&w) {
        first += v.conj() * c * dv * *w;
        second += dv.norm_sqr() * w;
    }
    (first.re / norm, second / norm)
}

/// Moments of a position-space wave function with `P = -i d/dx`.
pub fn position_space_moments(psi: &SampledSignal) -> Result<Moments, CsError> {
    let (norm, mean_x, var_x) = plain_moments(psi)?;
    let (mean_p, p2) = derivative_moments(psi, C64::new(0.0, -1.0), norm);
    Ok(Moments {
        norm_sqr: norm,
        mean_x,
        mean_p,
        delta_x: var_x.sqrt(),
        delta_p: (p2 - mean_p * mean_p).max(0.0).sqrt(),
    })
}

/// Moments of a momentum-space wave function (grid variable `p`) with `X = i d/dp`.
///
/// `norm_sqr` is the plain `int dp |phi|^2`.
pub fn momentum_space_moments(phi: &SampledSignal) -> Result<Moments, CsError> {
    let (norm, mean_p, var_p) = plain_moments(phi)?;
    let (mean_x, x2) = derivative_moments(phi, C64::new(0.0, 1.0), norm);
    Ok(Moments {
        norm_sqr: norm,
        mean_x,
        mean_p,
        delta_x: (x2 - mean_x * mean_x).max(0.0).sqrt(),
        delta_p: var_p.sqrt(),
    })
}
