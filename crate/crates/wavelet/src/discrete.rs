use std::f64::consts::PI;
use std::sync::Arc;

use windowed_fourier::SampledSignal;

use crate::{MeyerPair, Profile, WaveletError, C64};

/// Metric values below this are treated as uncovered.
const CHI_FLOOR: f64 = 1e-10;

/// Samples of `f^` on the DFT grid `nu_k = k / (N dt)`, `k = -N/2 .. N - N/2 - 1`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub nus: Vec<f64>,
    pub values: Vec<C64>,
    pub dnu: f64,
    pub t0: f64,
    pub dt: f64,
}

fn dft_index(n: usize) -> impl Iterator<Item = i64> {
    let h = (n / 2) as i64;
    (0..n as i64).map(move |k| k - h)
}

fn roots(n: usize, sign: f64) -> Vec<C64> {
    (0..n).map(|j| C64::from_polar(1.0, sign * 2.0 * PI * j as f64 / n as f64)).collect()
}

/// `f^(nu_k) = sum_j dt e^{2 pi i nu_k t_j} f_j`.
pub fn spectrum(f: &SampledSignal) -> Spectrum {
    let n = f.len();
    let dt = f.dt();
    let dnu = 1.0 / (n as f64 * dt);
    let w = roots(n, 1.0);
    let mut nus = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for k in dft_index(n) {
        let nu = k as f64 * dnu;
        let s: C64 = f
            .samples()
            .iter()
            .enumerate()
            .map(|(j, x)| w[(k * j as i64).rem_euclid(n as i64) as usize] * x)
            .sum();
        nus.push(nu);
        values.push(s * C64::from_polar(dt, 2.0 * PI * nu * f.t0()));
    }
    Spectrum { nus, values, dnu, t0: f.t0(), dt }
}

/// `f_j = sum_k dnu e^{-2 pi i nu_k t_j} f^_k`, inverse of [`spectrum`].
pub fn inverse_spectrum(s: &Spectrum) -> Result<SampledSignal, WaveletError> {
    let n = s.values.len();
    let w = roots(n, -1.0);
    let shifted: Vec<C64> =
        s.values.iter().zip(&s.nus).map(|(v, &nu)| v * C64::from_polar(s.dnu, -2.0 * PI * nu * s.t0)).collect();
    let ks: Vec<i64> = dft_index(n).collect();
    let out = (0..n)
        .map(|j| {
            ks.iter()
                .zip(&shifted)
                .map(|(&k, v)| w[(k * j as i64).rem_euclid(n as i64) as usize] * v)
                .sum()
        })
        .collect();
    Ok(SampledSignal::new(out, s.t0, s.dt)?)
}

/// Profiles `k+` (supported in `[lo, hi]`, `lo > 0`) and `k-` (supported in `[-hi, -lo]`).
#[derive(Clone)]
pub struct BandPair {
    pub plus: Profile,
    pub minus: Profile,
    pub support: (f64, f64),
}

impl BandPair {
    pub fn new(plus: Profile, minus: Profile, support: (f64, f64)) -> Result<Self, WaveletError> {
        if !(support.0 > 0.0 && support.1 > support.0 && support.1.is_finite()) {
            return Err(WaveletError::Invalid(format!("profile support {support:?}")));
        }
        Ok(BandPair { plus, minus, support })
    }

    /// `sum_{m in range, eps} |k^eps(a^m nu)|^2`.
    pub fn chi(&self, a: f64, m_range: (i64, i64), nu: f64) -> f64 {
        (m_range.0..=m_range.1)
            .map(|m| {
                let x = a.powi(m as i32) * nu;
                (self.plus)(x).norm_sqr() + (self.minus)(x).norm_sqr()
            })
            .sum()
    }
}

impl From<&MeyerPair> for BandPair {
    fn from(p: &MeyerPair) -> Self {
        let (q, r) = (*p, *p);
        BandPair {
            plus: Arc::new(move |nu| C64::new(q.k_plus(nu), 0.0)),
            minus: Arc::new(move |nu| C64::new(r.k_minus(nu), 0.0)),
            support: p.support(),
        }
    }
}

/// Scale base `a`, time step `b` and the scale rows `m` to use.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DyadicLattice {
    pub a: f64,
    pub b: f64,
    pub m_range: (i64, i64),
}

impl DyadicLattice {
    pub fn new(a: f64, b: f64, m_range: (i64, i64)) -> Result<Self, WaveletError> {
        if !(a > 1.0) || !(b > 0.0) {
            return Err(WaveletError::Invalid(format!("a = {a}, b = {b}")));
        }
        if m_range.1 < m_range.0 {
            return Err(WaveletError::Invalid("empty scale range".into()));
        }
        Ok(DyadicLattice { a, b, m_range })
    }

    /// Centre frequency `F = a / ((a^2 - 1) b)`.
    pub fn f_center(&self) -> f64 {
        self.a / ((self.a * self.a - 1.0) * self.b)
    }

    /// Number of shifts per row on a signal of duration `period`, and whether it is exact.
    pub fn shifts_per_row(&self, m: i64, period: f64) -> (usize, bool) {
        let l = period / (self.a.powi(m as i32) * self.b);
        let r = l.round();
        if r >= 1.0 && (l - r).abs() < 1e-9 * l {
            (r as usize, true)
        } else {
            (l.ceil().max(1.0) as usize, false)
        }
    }

    /// Fraction of the spectral energy of `f` inside the band covered by the rows.
    pub fn coverage(&self, pair: &BandPair, f: &SampledSignal) -> f64 {
        let s = spectrum(f);
        let total: f64 = s.values.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 1.0;
        }
        let inside: f64 = s
            .nus
            .iter()
            .zip(&s.values)
            .map(|(&nu, v)| pair.chi(self.a, self.m_range, nu).min(1.0) * v.norm_sqr())
            .sum();
        inside / total
    }
}

/// One scale row: coefficients for `n = n0 .. n0 + values.len()`.
#[derive(Clone, Debug)]
pub struct Row {
    pub eps: i8,
    pub m: i64,
    pub n0: i64,
    pub values: Vec<C64>,
}

#[derive(Clone, Debug)]
pub struct DiscreteCoeffs {
    pub lattice: DyadicLattice,
    pub rows: Vec<Row>,
    /// Every row used a whole number of shifts per period, so the round trip is exact.
    pub exact: bool,
}

impl DiscreteCoeffs {
    pub fn get(&self, eps: i8, m: i64, n: i64) -> C64 {
        self.rows
            .iter()
            .find(|r| r.eps == eps && r.m == m)
            .and_then(|r| {
                let i = n - r.n0;
                (i >= 0 && (i as usize) < r.values.len()).then(|| r.values[i as usize])
            })
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// `b sum |f^eps_mn|^2`.
    pub fn energy(&self) -> f64 {
        self.lattice.b * self.rows.iter().flat_map(|r| &r.values).map(|v| v.norm_sqr()).sum::<f64>()
    }
}

fn profile<'a>(pair: &'a BandPair, eps: i8) -> &'a Profile {
    if eps > 0 {
        &pair.plus
    } else {
        &pair.minus
    }
}

/// Spectrum indices where `k^eps(scale nu)` can be nonzero.
fn row_support(pair: &BandPair, eps: i8, scale: f64, s: &Spectrum) -> Vec<usize> {
    let (lo, hi) = pair.support;
    let (lo, hi) = if eps > 0 { (lo / scale, hi / scale) } else { (-hi / scale, -lo / scale) };
    (0..s.nus.len()).filter(|&k| s.nus[k] >= lo && s.nus[k] <= hi).collect()
}

/// `f^eps_mn = int dnu conj(k^eps_mn(nu)) f^(nu)` with
/// `k^eps_mn(nu) = a^{m/2} e^{2 pi i n a^m b nu} k^eps(a^m nu)`.
pub fn discrete_wavelet_analyze(
    f: &SampledSignal,
    pair: &BandPair,
    lattice: &DyadicLattice,
) -> Result<DiscreteCoeffs, WaveletError> {
    let s = spectrum(f);
    let period = f.len() as f64 * f.dt();
    let mut rows = Vec::new();
    let mut exact = true;
    for eps in [1i8, -1] {
        let k = profile(pair, eps);
        for m in lattice.m_range.0..=lattice.m_range.1 {
            let scale = lattice.a.powi(m as i32);
            let step = scale * lattice.b;
            let (count, ok) = lattice.shifts_per_row(m, period);
            exact &= ok;
            // atoms centred near t = -n a^m b; choose the n covering the signal
            let n0 = (-(f.t0() + period) / step).floor() as i64 + 1;
            let support = row_support(pair, eps, scale, &s);
            let kv: Vec<(f64, C64)> =
                support.iter().map(|&i| (s.nus[i], k(scale * s.nus[i]).conj() * s.values[i])).collect();
            let values = (0..count as i64)
                .map(|j| {
                    let n = n0 + j;
                    kv.iter().map(|&(nu, x)| C64::from_polar(1.0, -2.0 * PI * n as f64 * step * nu) * x).sum::<C64>()
                        * (s.dnu * scale.sqrt())
                })
                .collect();
            rows.push(Row { eps, m, n0, values });
        }
    }
    Ok(DiscreteCoeffs { lattice: *lattice, rows, exact })
}

/// `f^(nu) = b sum_{eps,m,n} k^eps_mn(nu) f^eps_mn / chi(nu)`, back on the grid of `like`.
pub fn discrete_wavelet_reconstruct(
    coeffs: &DiscreteCoeffs,
    pair: &BandPair,
    like: &SampledSignal,
) -> Result<SampledSignal, WaveletError> {
    let lat = &coeffs.lattice;
    let n = like.len();
    let dnu = 1.0 / (n as f64 * like.dt());
    let nus: Vec<f64> = dft_index(n).map(|k| k as f64 * dnu).collect();
    let mut s = Spectrum { nus, values: vec![C64::new(0.0, 0.0); n], dnu, t0: like.t0(), dt: like.dt() };
    for row in &coeffs.rows {
        let scale = lat.a.powi(row.m as i32);
        let step = scale * lat.b;
        let k = profile(pair, row.eps);
        for i in row_support(pair, row.eps, scale, &s) {
            let nu = s.nus[i];
            let sum: C64 = row
                .values
                .iter()
                .enumerate()
                .map(|(j, c)| C64::from_polar(1.0, 2.0 * PI * (row.n0 + j as i64) as f64 * step * nu) * c)
                .sum();
            s.values[i] += k(scale * nu) * sum * (lat.b * scale.sqrt());
        }
    }
    let peak = s.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for (v, &nu) in s.values.iter_mut().zip(&s.nus) {
        let chi = pair.chi(lat.a, lat.m_range, nu);
        if chi < CHI_FLOOR {
            if v.norm() > CHI_FLOOR * peak {
                return Err(WaveletError::MetricFloor { nu, chi });
            }
            *v = C64::new(0.0, 0.0);
        } else {
            *v /= chi;
        }
    }
    inverse_spectrum(&s)
}

/// `(b sum |f^eps_mn|^2, int chi |f^|^2)` for the discrete Parseval identity.
pub fn discrete_parseval(coeffs: &DiscreteCoeffs, pair: &BandPair, f: &SampledSignal) -> (f64, f64) {
    let s = spectrum(f);
    let lat = &coeffs.lattice;
    let rhs = s.dnu
        * s.nus.iter().zip(&s.values).map(|(&nu, v)| pair.chi(lat.a, lat.m_range, nu) * v.norm_sqr()).sum::<f64>();
    (coeffs.energy(), rhs)
}
