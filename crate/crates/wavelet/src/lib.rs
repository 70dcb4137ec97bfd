//! Continuous wavelet transform, admissibility, and a discrete tight wavelet
//! frame built from smooth band-pass profiles.
//!
//! Fourier convention: `f^(nu) = int e^{2 pi i nu t} f(t) dt`.

mod discrete;
mod meyer;

pub use discrete::{
    discrete_parseval, discrete_wavelet_analyze, discrete_wavelet_reconstruct, inverse_spectrum,
    spectrum, BandPair, DiscreteCoeffs, DyadicLattice, Spectrum,
};
pub use meyer::{build_meyer_pair, chi_partition, eta, ChiPartition, MeyerPair, Smoothness};

use num_complex::Complex64;
use quadrature::{adaptive, QuadError};
use std::f64::consts::PI;
use std::sync::Arc;
use thiserror::Error;
use windowed_fourier::SampledSignal;

pub type C64 = Complex64;
pub type Profile = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveletError {
    #[error("scale a = 0 is not allowed")]
    ZeroScale,
    #[error("empty {0} list")]
    Empty(&'static str),
    #[error("wavelet {0} has no time-domain form")]
    NoTimeDomain(String),
    #[error("wavelet is not admissible: {0}")]
    Inadmissible(String),
    #[error("only one sign of scale given but c+ = {plus} and c- = {minus} differ")]
    NeedsBothSigns { plus: f64, minus: f64 },
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("metric chi(nu) = {chi:e} too small at nu = {nu} where the signal is present")]
    MetricFloor { nu: f64, chi: f64 },
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Signal(#[from] windowed_fourier::WftError),
}

impl From<QuadError> for WaveletError {
    fn from(e: QuadError) -> Self {
        WaveletError::Quadrature(e.to_string())
    }
}

/// Mother wavelet given by its frequency profile and, optionally, its time form.
#[derive(Clone)]
pub struct WaveletSpec {
    pub name: String,
    time: Option<Profile>,
    freq: Profile,
    /// `|h^(xi)|` is negligible for `|xi|` outside this interval.
    band: (f64, f64),
}

impl std::fmt::Debug for WaveletSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WaveletSpec").field("name", &self.name).field("band", &self.band).finish()
    }
}

impl WaveletSpec {
    pub fn new(name: &str, time: Option<Profile>, freq: Profile, band: (f64, f64)) -> Result<Self, WaveletError> {
        if !(band.0 >= 0.0 && band.1 > band.0 && band.1.is_finite()) {
            return Err(WaveletError::Invalid(format!("frequency band {band:?}")));
        }
        Ok(WaveletSpec { name: name.to_string(), time, freq, band })
    }

    /// `h(t) = (1 - t^2) e^{-t^2/2}`, `h^(xi) = 4 pi^2 xi^2 sqrt(2 pi) e^{-2 pi^2 xi^2}`.
    pub fn mexican_hat() -> Self {
        WaveletSpec {
            name: "mexican-hat".into(),
            time: Some(Arc::new(|t: f64| C64::new((1.0 - t * t) * (-0.5 * t * t).exp(), 0.0))),
            freq: Arc::new(|xi: f64| {
                C64::new(4.0 * PI * PI * xi * xi * (2.0 * PI).sqrt() * (-2.0 * PI * PI * xi * xi).exp(), 0.0)
            }),
            band: (0.0, 2.5),
        }
    }

    /// Gaussian `e^{-t^2/2}`; its transform does not vanish at zero.
    pub fn gaussian() -> Self {
        WaveletSpec {
            name: "gaussian".into(),
            time: Some(Arc::new(|t: f64| C64::new((-0.5 * t * t).exp(), 0.0))),
            freq: Arc::new(|xi: f64| C64::new((2.0 * PI).sqrt() * (-2.0 * PI * PI * xi * xi).exp(), 0.0)),
            band: (0.0, 2.5),
        }
    }

    /// Odd real wavelet `h(t) = -t e^{-t^2/2}` (derivative of a Gaussian).
    pub fn gaussian_derivative() -> Self {
        WaveletSpec {
            name: "gaussian-derivative".into(),
            time: Some(Arc::new(|t: f64| C64::new(-t * (-0.5 * t * t).exp(), 0.0))),
            // FT of g' is -2 pi i xi g^
            freq: Arc::new(|xi: f64| {
                C64::new(0.0, 2.0 * PI * xi * (2.0 * PI).sqrt() * (-2.0 * PI * PI * xi * xi).exp())
            }),
            band: (0.0, 2.5),
        }
    }

    /// One side of a Meyer-type pair as a frequency-only wavelet.
    pub fn from_meyer(pair: &MeyerPair, plus: bool) -> Self {
        let p = pair.clone();
        let (lo, hi) = pair.support();
        WaveletSpec {
            name: if plus { "meyer+".into() } else { "meyer-".into() },
            time: None,
            freq: if plus {
                Arc::new(move |nu| C64::new(p.k_plus(nu), 0.0))
            } else {
                Arc::new(move |nu| C64::new(p.k_minus(nu), 0.0))
            },
            band: (lo, hi),
        }
    }

    pub fn time(&self, t: f64) -> Option<C64> {
        self.time.as_ref().map(|h| h(t))
    }

    pub fn has_time_domain(&self) -> bool {
        self.time.is_some()
    }

    pub fn fourier(&self, xi: f64) -> C64 {
        (self.freq)(xi)
    }

    pub fn band(&self) -> (f64, f64) {
        self.band
    }
}

/// Outcome of the admissibility test.
#[derive(Clone, Debug, PartialEq)]
pub enum Admissibility {
    Finite { c_h: f64, c_plus: f64, c_minus: f64 },
    Inadmissible { reason: String },
}

impl Admissibility {
    pub fn value(&self) -> Option<f64> {
        match self {
            Admissibility::Finite { c_h, .. } => Some(*c_h),
            Admissibility::Inadmissible { .. } => None,
        }
    }
}

const ADM_TOL: f64 = 1e-13;

fn peak_modulus(h: &WaveletSpec) -> f64 {
    let (lo, hi) = h.band;
    (0..=400)
        .map(|k| lo + (hi - lo) * k as f64 / 400.0)
        .map(|x| h.fourier(x).norm().max(h.fourier(-x).norm()))
        .fold(0.0, f64::max)
}

fn zero_check(h: &WaveletSpec) -> Option<Admissibility> {
    let peak = peak_modulus(h);
    if peak == 0.0 {
        return Some(Admissibility::Inadmissible { reason: "zero wavelet".into() });
    }
    let h0 = h.fourier(0.0).norm();
    if h0 > 1e-8 * peak {
        return Some(Admissibility::Inadmissible {
            reason: format!("|h^(0)| = {h0:e} does not vanish"),
        });
    }
    None
}

/// `c_h = int |h^(xi)|^2 / |xi| dxi`, integrated in `u = ln |xi|` on each half-line.
pub fn admissibility_constant(h: &WaveletSpec) -> Admissibility {
    if let Some(bad) = zero_check(h) {
        return bad;
    }
    let (lo, hi) = h.band;
    let u_lo = lo.max(1e-12 * hi).ln();
    let u_hi = hi.ln();
    let side = |sign: f64| {
        adaptive(
            |u: f64| C64::new(h.fourier(sign * u.exp()).norm_sqr(), 0.0),
            u_lo,
            u_hi,
            ADM_TOL,
            ADM_TOL,
            4000,
        )
        .map(|r| r.value.re)
    };
    finite_or_reason(side(1.0), side(-1.0))
}

/// Same constant by direct integration in `xi`, with the removable point at zero.
pub fn admissibility_direct(h: &WaveletSpec) -> Admissibility {
    if let Some(bad) = zero_check(h) {
        return bad;
    }
    let (lo, hi) = h.band;
    let side = |sign: f64| {
        adaptive(
            |x: f64| {
                if x == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    C64::new(h.fourier(sign * x).norm_sqr() / x, 0.0)
                }
            },
            lo,
            hi,
            ADM_TOL,
            ADM_TOL,
            4000,
        )
        .map(|r| r.value.re)
    };
    finite_or_reason(side(1.0), side(-1.0))
}

fn finite_or_reason(p: Result<f64, QuadError>, m: Result<f64, QuadError>) -> Admissibility {
    match (p, m) {
        (Ok(c_plus), Ok(c_minus)) if (c_plus + c_minus).is_finite() => {
            Admissibility::Finite { c_h: c_plus + c_minus, c_plus, c_minus }
        }
        (Err(e), _) | (_, Err(e)) => Admissibility::Inadmissible { reason: e.to_string() },
        _ => Admissibility::Inadmissible { reason: "non-finite integral".into() },
    }
}

/// `H(nu) = int da |a|^{1-p} |h^(a nu)|^2`, the frequency response of the density `|a|^{-p}`.
///
/// Constant in `nu` exactly when `p = 2`.
pub fn scale_density_response(h: &WaveletSpec, nu: f64, p: f64) -> Result<f64, WaveletError> {
    if nu == 0.0 {
        return Err(WaveletError::Invalid("nu = 0".into()));
    }
    let (lo, hi) = h.band;
    // a nu = +-e^u, da = |a| du
    let u_lo = lo.max(1e-12 * hi).ln();
    let u_hi = hi.ln();
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let r = adaptive(
            |u: f64| {
                let a = (u.exp() / nu.abs()).abs();
                C64::new(a.powf(2.0 - p) * h.fourier(sign * u.exp()).norm_sqr(), 0.0)
            },
            u_lo,
            u_hi,
            1e-14,
            1e-13,
            4000,
        )?;
        total += r.value.re;
    }
    Ok(total)
}

/// Coefficients `f~(a, s)` stored row-major by scale.
#[derive(Clone, Debug)]
pub struct CwtGrid {
    pub scales: Vec<f64>,
    pub shifts: Vec<f64>,
    pub values: Vec<C64>,
}

impl CwtGrid {
    pub fn get(&self, i_scale: usize, i_shift: usize) -> C64 {
        self.values[i_scale * self.shifts.len() + i_shift]
    }
}

fn check_scales(scales: &[f64]) -> Result<(), WaveletError> {
    if scales.is_empty() {
        return Err(WaveletError::Empty("scale"));
    }
    if scales.iter().any(|&a| a == 0.0 || !a.is_finite()) {
        return Err(WaveletError::ZeroScale);
    }
    Ok(())
}

/// Trapezoid weights of the samples of `f` (end points halved).
pub fn trapezoid_sample_weights(f: &SampledSignal) -> Vec<f64> {
    quadrature::trapezoid_weights(f.len(), f.dt())
}

/// `f~(a, s) = int dt |a|^{-1/2} conj(h((t - s)/a)) f(t)`, trapezoid on the signal grid.
pub fn cwt_analyze(
    f: &SampledSignal,
    h: &WaveletSpec,
    scales: &[f64],
    shifts: &[f64],
) -> Result<CwtGrid, WaveletError> {
    check_scales(scales)?;
    if shifts.is_empty() {
        return Err(WaveletError::Empty("shift"));
    }
    let hf = h.time.as_ref().ok_or_else(|| WaveletError::NoTimeDomain(h.name.clone()))?;
    let w = trapezoid_sample_weights(f);
    let mut values = Vec::with_capacity(scales.len() * shifts.len());
    for &a in scales {
        let norm = a.abs().powf(-0.5);
        for &s in shifts {
            let acc: C64 = f
                .samples()
                .iter()
                .enumerate()
                .map(|(i, x)| hf((f.time(i) - s) / a).conj() * x * w[i])
                .sum();
            values.push(acc * norm);
        }
    }
    Ok(CwtGrid { scales: scales.to_vec(), shifts: shifts.to_vec(), values })
}

/// `f~(a, s) = |a|^{1/2} int dnu e^{-2 pi i nu s} conj(h^(a nu)) f^(nu)` on the DFT grid of `f`.
///
/// Works for frequency-only wavelets. The signal is treated as periodic with
/// period `N dt`, so shifts spanning one period capture all of the energy.
pub fn cwt_analyze_spectral(
    f: &Spectrum,
    h: &WaveletSpec,
    scales: &[f64],
    shifts: &[f64],
) -> Result<CwtGrid, WaveletError> {
    check_scales(scales)?;
    if shifts.is_empty() {
        return Err(WaveletError::Empty("shift"));
    }
    let mut values = Vec::with_capacity(scales.len() * shifts.len());
    for &a in scales {
        let kv: Vec<(f64, C64)> = f
            .nus
            .iter()
            .zip(&f.values)
            .map(|(&nu, v)| (nu, h.fourier(a * nu).conj() * v))
            .filter(|(_, x)| x.norm_sqr() > 0.0)
            .collect();
        let norm = a.abs().sqrt() * f.dnu;
        for &s in shifts {
            let acc: C64 = kv.iter().map(|&(nu, x)| C64::from_polar(1.0, -2.0 * PI * nu * s) * x).sum();
            values.push(acc * norm);
        }
    }
    Ok(CwtGrid { scales: scales.to_vec(), shifts: shifts.to_vec(), values })
}

/// Trapezoid weights for possibly non-uniform sorted points.
fn point_weights(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return vec![1.0; n];
    }
    (0..n)
        .map(|i| {
            let l = if i == 0 { x[0] } else { x[i - 1] };
            let r = if i + 1 == n { x[n - 1] } else { x[i + 1] };
            0.5 * (r - l)
        })
        .collect()
}

/// Weights for `int da / a^2 (...)` at the given scales.
///
/// Each sign is integrated separately with the trapezoid rule in `ln |a|`,
/// so log-spaced scale lists integrate smooth scale profiles spectrally.
pub fn scale_weights(scales: &[f64]) -> Result<Vec<f64>, WaveletError> {
    check_scales(scales)?;
    let mut out = vec![0.0; scales.len()];
    for sign in [1.0, -1.0] {
        let mut idx: Vec<usize> = (0..scales.len()).filter(|&i| scales[i] * sign > 0.0).collect();
        idx.sort_by(|&i, &j| scales[i].abs().total_cmp(&scales[j].abs()));
        let logs: Vec<f64> = idx.iter().map(|&i| scales[i].abs().ln()).collect();
        for (k, w) in point_weights(&logs).into_iter().enumerate() {
            let a = scales[idx[k]].abs();
            // da / a^2 = d(ln a) / a
            out[idx[k]] = w / a;
        }
    }
    Ok(out)
}

/// Normalization constant for a scale grid: `c_h` when both signs are present,
/// the one-sided constant otherwise (which must then agree with the other side).
pub fn cwt_normalization(h: &WaveletSpec, scales: &[f64]) -> Result<f64, WaveletError> {
    check_scales(scales)?;
    let (c_h, c_plus, c_minus) = match admissibility_constant(h) {
        Admissibility::Finite { c_h, c_plus, c_minus } => (c_h, c_plus, c_minus),
        Admissibility::Inadmissible { reason } => return Err(WaveletError::Inadmissible(reason)),
    };
    let pos = scales.iter().any(|&a| a > 0.0);
    let neg = scales.iter().any(|&a| a < 0.0);
    if pos && neg {
        return Ok(c_h);
    }
    if (c_plus - c_minus).abs() > 1e-8 * c_h {
        return Err(WaveletError::NeedsBothSigns { plus: c_plus, minus: c_minus });
    }
    Ok(0.5 * c_h)
}

/// `c^{-1} sum w_a w_s |f~(a, s)|^2 / a^2`, the discretized continuous Parseval sum.
pub fn cwt_energy(coeffs: &CwtGrid, normalization: f64) -> Result<f64, WaveletError> {
    let wa = scale_weights(&coeffs.scales)?;
    let ws = point_weights(&coeffs.shifts);
    let mut acc = 0.0;
    for (i, &a) in wa.iter().enumerate() {
        for (j, &s) in ws.iter().enumerate() {
            acc += a * s * coeffs.get(i, j).norm_sqr();
        }
    }
    Ok(acc / normalization)
}

/// Round-trip result of [`cwt_reconstruct`].
#[derive(Clone, Debug)]
pub struct CwtReconstruction {
    pub signal: SampledSignal,
    pub rel_error: Option<f64>,
}

/// `f(t) = c^{-1} sum w_a w_s a^{-2} |a|^{-1/2} h((t - s)/a) f~(a, s)` on the grid of `like`.
pub fn cwt_reconstruct(
    coeffs: &CwtGrid,
    h: &WaveletSpec,
    like: &SampledSignal,
    reference: Option<&SampledSignal>,
) -> Result<CwtReconstruction, WaveletError> {
    let c = cwt_normalization(h, &coeffs.scales)?;
    let hf = h.time.as_ref().ok_or_else(|| WaveletError::NoTimeDomain(h.name.clone()))?;
    let wa = scale_weights(&coeffs.scales)?;
    let ws = point_weights(&coeffs.shifts);
    let mut out = vec![C64::new(0.0, 0.0); like.len()];
    for (i, &a) in coeffs.scales.iter().enumerate() {
        let fac = wa[i] * a.abs().powf(-0.5) / c;
        for (j, &s) in coeffs.shifts.iter().enumerate() {
            let v = coeffs.get(i, j) * ws[j] * fac;
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += hf((like.time(k) - s) / a) * v;
            }
        }
    }
    let signal = SampledSignal::new(out, like.t0(), like.dt())?;
    let rel_error = reference.map(|r| signal.relative_l2_distance(r));
    Ok(CwtReconstruction { signal, rel_error })
}

/// `n` log-spaced positive scales from `a_min` to `a_max`.
pub fn log_scales(a_min: f64, a_max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a_min];
    }
    let (l0, l1) = (a_min.ln(), a_max.ln());
    (0..n).map(|k| (l0 + (l1 - l0) * k as f64 / (n - 1) as f64).exp()).collect()
}
