//! Windowed Fourier transform of sampled signals.
//!
//! Conventions: `f^(nu) = int e^{2 pi i nu t} f(t) dt`. Windows live on the
//! half-open interval `[-tau, 0)` and are sampled on the signal grid, so every
//! time shift used by the lattice has to be a whole number of samples.
//!
//! With `F = 1/tau` and `m` running over `tau/dt` consecutive integers, the
//! frequency sum in the reconstruction is a DFT of the windowed piece, which
//! makes the lattice round trip exact up to rounding.

mod signal;

pub use signal::{SampledSignal, TimeGrid};

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

pub type C64 = Complex64;

/// Relative tolerance used when checking that times sit on the sample grid.
const GRID_TOL: f64 = 1e-9;
/// Pointwise requirement `g >= G_FLOOR * B` before dividing by `g`.
pub const G_FLOOR: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WftError {
    #[error("empty {0} list")]
    Empty(&'static str),
    #[error("{what} = {value} is not a whole number of samples (dt = {dt})")]
    Misaligned { what: &'static str, value: f64, dt: f64 },
    #[error("sample spacing mismatch: signal {signal}, window {window}")]
    Spacing { signal: f64, window: f64 },
    #[error("lattice too sparse (T > tau): A = {a:e}, B = {b:e}")]
    LatticeTooSparse { a: f64, b: f64 },
    #[error("metric g({t}) = {g:e} below tolerance")]
    MetricFloor { t: f64, g: f64 },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

fn whole(value: f64, dt: f64, what: &'static str) -> Result<i64, WftError> {
    let r = value / dt;
    let k = r.round();
    if (r - k).abs() > GRID_TOL * r.abs().max(1.0) {
        return Err(WftError::Misaligned { what, value, dt });
    }
    Ok(k as i64)
}

/// Window sampled on `[-tau, 0)`.
#[derive(Clone, Debug)]
pub struct WindowSpec {
    samples: Vec<C64>,
    dt: f64,
}

impl WindowSpec {
    /// Samples `h(t)` at `t = -tau + j dt`, `j = 0 .. tau/dt - 1`.
    pub fn from_fn<F: Fn(f64) -> C64>(dt: f64, tau: f64, h: F) -> Result<Self, WftError> {
        if !(dt > 0.0) || !(tau > 0.0) {
            return Err(WftError::Invalid("dt and tau must be positive".into()));
        }
        let l = whole(tau, dt, "tau")?;
        if l < 1 {
            return Err(WftError::Invalid("tau shorter than one sample".into()));
        }
        let samples = (0..l).map(|j| h((j - l) as f64 * dt)).collect();
        Ok(WindowSpec { samples, dt })
    }

    /// Constant `height` on the whole support.
    pub fn rectangular(dt: f64, tau: f64, height: f64) -> Result<Self, WftError> {
        Self::from_fn(dt, tau, |_| C64::new(height, 0.0))
    }

    /// `sin^2` bump vanishing at both ends of the support.
    pub fn smooth_bump(dt: f64, tau: f64) -> Result<Self, WftError> {
        Self::from_fn(dt, tau, |t| C64::new((PI * (t + tau) / tau).sin().powi(2), 0.0))
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Support length in samples.
    pub fn support_len(&self) -> usize {
        self.samples.len()
    }

    pub fn tau(&self) -> f64 {
        self.samples.len() as f64 * self.dt
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    /// `h(k dt)`; zero off the support `k in [-L, -1]`.
    pub fn at_offset(&self, k: i64) -> C64 {
        let l = self.samples.len() as i64;
        if (-l..0).contains(&k) {
            self.samples[(k + l) as usize]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// `||h||^2 = dt sum |h|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.dt * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// `h^(nu)` by direct summation.
    pub fn fourier(&self, nu: f64) -> C64 {
        let l = self.samples.len() as i64;
        self.samples
            .iter()
            .enumerate()
            .map(|(j, h)| C64::from_polar(1.0, 2.0 * PI * nu * (j as i64 - l) as f64 * self.dt) * h)
            .sum::<C64>()
            * self.dt
    }
}

fn check_spacing(f: &SampledSignal, h: &WindowSpec) -> Result<(), WftError> {
    if ((f.dt() - h.dt()) / f.dt()).abs() > GRID_TOL {
        return Err(WftError::Spacing { signal: f.dt(), window: h.dt() });
    }
    Ok(())
}

/// Coefficients on an arbitrary (frequency, shift) grid, stored row-major by frequency.
#[derive(Clone, Debug)]
pub struct WftGrid {
    pub freqs: Vec<f64>,
    pub shifts: Vec<f64>,
    pub values: Vec<C64>,
}

impl WftGrid {
    pub fn get(&self, i_freq: usize, i_shift: usize) -> C64 {
        self.values[i_freq * self.shifts.len() + i_shift]
    }
}

/// `f~(nu, s) = sum_t dt e^{2 pi i nu t} conj(h(t - s)) f(t)`.
pub fn wft_analyze(
    f: &SampledSignal,
    h: &WindowSpec,
    freqs: &[f64],
    shifts: &[f64],
) -> Result<WftGrid, WftError> {
    if freqs.is_empty() {
        return Err(WftError::Empty("frequency"));
    }
    if shifts.is_empty() {
        return Err(WftError::Empty("shift"));
    }
    check_spacing(f, h)?;
    let dt = f.dt();
    let l = h.support_len() as i64;
    let mut values = Vec::with_capacity(freqs.len() * shifts.len());
    let offsets: Vec<i64> = shifts
        .iter()
        .map(|&s| whole(f.t0() - s, dt, "t0 - shift"))
        .collect::<Result<_, _>>()?;
    for &nu in freqs {
        for &off in &offsets {
            // sample i sits at offset off + i relative to the shift
            let lo = (-l - off).max(0);
            let hi = (-off).min(f.len() as i64);
            let mut acc = C64::new(0.0, 0.0);
            for i in lo..hi {
                let t = f.time(i as usize);
                acc += C64::from_polar(1.0, 2.0 * PI * nu * t)
                    * h.at_offset(off + i).conj()
                    * f.samples()[i as usize];
            }
            values.push(acc * dt);
        }
    }
    Ok(WftGrid { freqs: freqs.to_vec(), shifts: shifts.to_vec(), values })
}

/// The discrete lattice `{(mF, nT)}` with inclusive index windows.
#[derive(Clone, Debug, PartialEq)]
pub struct WftLattice {
    pub t_step: f64,
    pub f_step: f64,
    pub m_range: (i64, i64),
    pub n_range: (i64, i64),
}

impl WftLattice {
    /// `F = 1/tau`, `tau/dt` frequencies centred on zero and every `n` whose
    /// window meets the signal.
    pub fn covering(f: &SampledSignal, h: &WindowSpec, t_step: f64) -> Result<Self, WftError> {
        check_spacing(f, h)?;
        if !(t_step > 0.0) {
            return Err(WftError::Invalid("T must be positive".into()));
        }
        let p = whole(t_step, f.dt(), "T")?;
        let i0 = whole(f.t0(), f.dt(), "t0")?;
        let l = h.support_len() as i64;
        let last = i0 + f.len() as i64 - 1;
        let n_lo = (i0 + 1 + p - 1).div_euclid(p);
        let n_hi = (last + l).div_euclid(p);
        let m_lo = -(l / 2);
        Ok(WftLattice {
            t_step,
            f_step: 1.0 / h.tau(),
            m_range: (m_lo, m_lo + l - 1),
            n_range: (n_lo, n_hi),
        })
    }

    pub fn m_count(&self) -> usize {
        (self.m_range.1 - self.m_range.0 + 1).max(0) as usize
    }

    pub fn n_count(&self) -> usize {
        (self.n_range.1 - self.n_range.0 + 1).max(0) as usize
    }
}

/// Lattice coefficients `f~(mF, nT)`, stored row-major by `n`.
#[derive(Clone, Debug)]
pub struct LatticeCoeffs {
    pub lattice: WftLattice,
    pub values: Vec<C64>,
}

impl LatticeCoeffs {
    pub fn get(&self, m: i64, n: i64) -> C64 {
        let (m0, _) = self.lattice.m_range;
        let (n0, _) = self.lattice.n_range;
        self.values[(n - n0) as usize * self.lattice.m_count() + (m - m0) as usize]
    }

    /// The `m = 0` row as `(n, value)` pairs.
    pub fn dc_row(&self) -> Vec<(i64, C64)> {
        let (n0, n1) = self.lattice.n_range;
        (n0..=n1).map(|n| (n, self.get(0, n))).collect()
    }

    /// `sum |f~(mF, nT)|^2`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Phase `e^{2 pi i m F k dt}` for integer sample index `k`, exact-DFT table when `F tau = 1`.
struct Phase {
    table: Option<Vec<C64>>,
    step: f64,
}

impl Phase {
    fn new(f_step: f64, dt: f64, l: usize) -> Self {
        let step = f_step * dt;
        let table = if ((step * l as f64) - 1.0).abs() < 1e-12 {
            Some((0..l).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / l as f64)).collect())
        } else {
            None
        };
        Phase { table, step }
    }

    fn at(&self, m: i64, k: i64) -> C64 {
        match &self.table {
            Some(t) => t[(m * k).rem_euclid(t.len() as i64) as usize],
            None => C64::from_polar(1.0, 2.0 * PI * self.step * (m * k) as f64),
        }
    }
}

/// Coefficients on the lattice.
pub fn wft_lattice_analyze(
    f: &SampledSignal,
    h: &WindowSpec,
    lattice: &WftLattice,
) -> Result<LatticeCoeffs, WftError> {
    check_spacing(f, h)?;
    let dt = f.dt();
    let p = whole(lattice.t_step, dt, "T")?;
    let i0 = whole(f.t0(), dt, "t0")?;
    let l = h.support_len() as i64;
    let phase = Phase::new(lattice.f_step, dt, h.support_len());
    let mut values = Vec::with_capacity(lattice.m_count() * lattice.n_count());
    for n in lattice.n_range.0..=lattice.n_range.1 {
        // absolute sample indices k with h(k dt - nT) != 0
        let piece: Vec<(i64, C64)> = ((n * p - l)..(n * p))
            .filter_map(|k| {
                let i = k - i0;
                if i < 0 || i >= f.len() as i64 {
                    return None;
                }
                Some((k, h.at_offset(k - n * p).conj() * f.samples()[i as usize]))
            })
            .collect();
        for m in lattice.m_range.0..=lattice.m_range.1 {
            let acc: C64 = piece.iter().map(|&(k, x)| phase.at(m, k) * x).sum();
            values.push(acc * dt);
        }
    }
    Ok(LatticeCoeffs { lattice: lattice.clone(), values })
}

/// `g(t) = tau sum_n |h(t - nT)|^2` on a grid, with bounds over one period.
#[derive(Clone, Debug)]
pub struct LatticeWeight {
    pub g: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

/// Period of `g` in samples and its values over one period, indexed by absolute sample mod P.
fn weight_period(h: &WindowSpec, p: i64) -> Vec<f64> {
    let l = h.support_len() as i64;
    let tau = h.tau();
    (0..p)
        .map(|k| {
            // all n with k - nP in [-L, -1]
            let n_lo = (k + 1).div_euclid(p) + if (k + 1).rem_euclid(p) == 0 { 0 } else { 1 };
            let n_hi = (k + l).div_euclid(p);
            tau * (n_lo..=n_hi).map(|n| h.at_offset(k - n * p).norm_sqr()).sum::<f64>()
        })
        .collect()
}

/// Samples of `g` on `grid` and the frame bounds `A = min g`, `B = max g`.
pub fn lattice_weight(h: &WindowSpec, t_step: f64, grid: &TimeGrid) -> Result<LatticeWeight, WftError> {
    if !(t_step > 0.0) {
        return Err(WftError::Invalid("T must be positive".into()));
    }
    if ((grid.dt - h.dt()) / grid.dt).abs() > GRID_TOL {
        return Err(WftError::Spacing { signal: grid.dt, window: h.dt() });
    }
    let p = whole(t_step, h.dt(), "T")?;
    let i0 = whole(grid.t0, grid.dt, "t0")?;
    let period = weight_period(h, p);
    let a = period.iter().cloned().fold(f64::INFINITY, f64::min);
    let b = period.iter().cloned().fold(0.0, f64::max);
    if !(a > G_FLOOR * b) {
        return Err(WftError::LatticeTooSparse { a, b });
    }
    let g = (0..grid.n as i64).map(|i| period[(i0 + i).rem_euclid(p) as usize]).collect();
    Ok(LatticeWeight { g, a, b })
}

/// `f(t) = g(t)^{-1} sum_{n,m} e^{-2 pi i m F t} h(t - nT) f~(mF, nT)` on `grid`.
pub fn wft_reconstruct(
    coeffs: &LatticeCoeffs,
    h: &WindowSpec,
    grid: &TimeGrid,
) -> Result<SampledSignal, WftError> {
    let lat = &coeffs.lattice;
    let weight = lattice_weight(h, lat.t_step, grid)?;
    let dt = grid.dt;
    let p = whole(lat.t_step, dt, "T")?;
    let i0 = whole(grid.t0, dt, "t0")?;
    let l = h.support_len() as i64;
    let phase = Phase::new(lat.f_step, dt, h.support_len());
    let mut acc = vec![C64::new(0.0, 0.0); grid.n];
    for n in lat.n_range.0..=lat.n_range.1 {
        for k in (n * p - l)..(n * p) {
            let i = k - i0;
            if i < 0 || i >= grid.n as i64 {
                continue;
            }
            let s: C64 = (lat.m_range.0..=lat.m_range.1)
                .map(|m| phase.at(m, k).conj() * coeffs.get(m, n))
                .sum();
            acc[i as usize] += h.at_offset(k - n * p) * s;
        }
    }
    divide_by_metric(acc, &weight, grid)
}

fn divide_by_metric(acc: Vec<C64>, w: &LatticeWeight, grid: &TimeGrid) -> Result<SampledSignal, WftError> {
    let mut out = Vec::with_capacity(acc.len());
    for (i, (v, &g)) in acc.into_iter().zip(&w.g).enumerate() {
        if g < G_FLOOR * w.b {
            return Err(WftError::MetricFloor { t: grid.time(i), g });
        }
        out.push(v / g);
    }
    SampledSignal::new(out, grid.t0, grid.dt)
}

/// Band-limited approximation from the `m = 0` row only.
#[derive(Clone, Debug)]
pub struct BandLimited {
    pub signal: SampledSignal,
    /// Relative L2 error against the reference, when one is given.
    pub rel_error: Option<f64>,
}

/// `f(t) ~ g(t)^{-1} sum_n h(t - nT) f~(0, nT)`.
pub fn band_limited_approx(
    row: &[(i64, C64)],
    h: &WindowSpec,
    t_step: f64,
    grid: &TimeGrid,
    reference: Option<&SampledSignal>,
) -> Result<BandLimited, WftError> {
    let weight = lattice_weight(h, t_step, grid)?;
    let p = whole(t_step, grid.dt, "T")?;
    let i0 = whole(grid.t0, grid.dt, "t0")?;
    let l = h.support_len() as i64;
    let mut acc = vec![C64::new(0.0, 0.0); grid.n];
    for &(n, c) in row {
        for k in (n * p - l)..(n * p) {
            let i = k - i0;
            if i >= 0 && i < grid.n as i64 {
                acc[i as usize] += h.at_offset(k - n * p) * c;
            }
        }
    }
    let signal = divide_by_metric(acc, &weight, grid)?;
    let rel_error = reference.map(|r| signal.relative_l2_distance(r));
    Ok(BandLimited { signal, rel_error })
}

/// `int g |f|^2` on the signal grid, the right-hand side of the frame-sum identity.
pub fn weighted_energy(f: &SampledSignal, w: &LatticeWeight) -> f64 {
    f.dt() * f.samples().iter().zip(&w.g).map(|(z, g)| g * z.norm_sqr()).sum::<f64>()
}

/// Spectrogram magnitudes `|f~(nu, s)|` as rows by frequency.
pub fn spectrogram(grid: &WftGrid) -> Vec<Vec<f64>> {
    grid.values.chunks(grid.shifts.len()).map(|r| r.iter().map(|z| z.norm()).collect()).collect()
}
