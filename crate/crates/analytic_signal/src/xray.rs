use std::f64::consts::PI;

use num_complex::Complex64;
use quadrature::{adaptive, gauss_legendre_on};
use statrs::function::gamma::gamma;
use wavelet::{admissibility_constant, Admissibility, WaveletSpec};

use crate::ast::DECAY_TOL;
use crate::field::{inverse_spectrum, FieldSample, FieldSpectrum};
use crate::AstError;

type C64 = Complex64;

fn box_interval(f: &FieldSample, x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let upper = f.upper();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for d in 0..f.ndim() {
        if y[d] == 0.0 {
            if x[d] < f.origin()[d] - 1e-12 || x[d] > upper[d] + 1e-12 {
                return None;
            }
            continue;
        }
        let a = (f.origin()[d] - x[d]) / y[d];
        let b = (upper[d] - x[d]) / y[d];
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    (hi >= lo).then_some((lo, hi))
}

/// `f_h(x, y) = int dt conj(h(t)) f(x + t y)`.
///
/// Nodes `t_j = j dt` with `dt = min_k h_k / |y_k|`, trapezoid over the nodes
/// whose points lie in the grid box, multilinear interpolation in between.
pub fn windowed_xray(f: &FieldSample, h: &WaveletSpec, x: &[f64], y: &[f64]) -> Result<C64, AstError> {
    let n = f.ndim();
    if x.len() != n || y.len() != n {
        return Err(AstError::Dimension(format!("expected {n} components")));
    }
    if y.iter().all(|&v| v == 0.0) {
        return Err(AstError::ZeroDirection);
    }
    if !h.has_time_domain() {
        return Err(AstError::NoTimeDomain(h.name.clone()));
    }
    let dt = (0..n)
        .filter(|&d| y[d] != 0.0)
        .map(|d| f.spacing()[d] / y[d].abs())
        .fold(f64::INFINITY, f64::min);
    let Some((lo, hi)) = box_interval(f, x, y) else {
        return Ok(C64::new(0.0, 0.0));
    };
    let j0 = (lo / dt - 1e-9).ceil() as i64;
    let j1 = (hi / dt + 1e-9).floor() as i64;
    if j1 < j0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let max = f.max_abs();
    let mut p = vec![0.0; n];
    let mut acc = C64::new(0.0, 0.0);
    for j in j0..=j1 {
        let t = j as f64 * dt;
        for d in 0..n {
            p[d] = x[d] + t * y[d];
        }
        let v = f.interpolate(&p);
        if (j == j0 || j == j1) && v.norm() > DECAY_TOL * max {
            return Err(AstError::InsufficientDecay { value: v.norm(), max });
        }
        let w = if j0 != j1 && (j == j0 || j == j1) { 0.5 } else { 1.0 };
        acc += h.time(t).unwrap().conj() * v * w;
    }
    Ok(acc * dt)
}

/// Admissibility constant and the measure normalization `N = Gamma(n/2) / (pi^{n/2} c_h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XrayAdmissibility {
    pub c_h: f64,
    pub norm: f64,
}

pub fn xray_admissibility(h: &WaveletSpec, n: usize) -> Result<XrayAdmissibility, AstError> {
    if !(1..=3).contains(&n) {
        return Err(AstError::Unsupported(format!("dimension {n}")));
    }
    match admissibility_constant(h) {
        Admissibility::Finite { c_h, .. } => {
            let nf = n as f64;
            Ok(XrayAdmissibility { c_h, norm: gamma(nf / 2.0) / (PI.powf(nf / 2.0) * c_h) })
        }
        Admissibility::Inadmissible { reason } => Err(AstError::Inadmissible(reason)),
    }
}

/// `int_0^inf dr/r |h^(r c)|^2`, in `u = ln r`.
fn radial(h: &WaveletSpec, c: f64) -> Result<f64, AstError> {
    if c == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi) = h.band();
    let ac = c.abs();
    let u0 = (lo.max(1e-12 * hi) / ac).ln();
    let u1 = (hi / ac).ln();
    adaptive(|u: f64| C64::new(h.fourier(c * u.exp()).norm_sqr(), 0.0), u0, u1, 1e-14, 1e-13, 4000)
        .map(|r| r.value.re)
        .map_err(|e| AstError::Invalid(e.to_string()))
}

/// `N int d^n y |y|^{-n} |h^(p.y)|^2`, which must equal 1 for every `p != 0`.
pub fn xray_normalization(h: &WaveletSpec, p: &[f64]) -> Result<f64, AstError> {
    let n = p.len();
    let adm = xray_admissibility(h, n)?;
    let pn = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    if pn == 0.0 {
        return Err(AstError::Invalid("p = 0".into()));
    }
    let total = match n {
        1 => radial(h, p[0])? + radial(h, -p[0])?,
        2 => {
            // p.y = r |p| cos(phi - phi_p); split at the two zeros of the cosine
            let phi_p = p[1].atan2(p[0]);
            let cuts = [phi_p - 1.5 * PI, phi_p - 0.5 * PI, phi_p + 0.5 * PI];
            let mut acc = 0.0;
            for w in cuts.windows(2) {
                let (xs, ws) = gauss_legendre_on(12, w[0], w[1]);
                for (phi, wt) in xs.iter().zip(&ws) {
                    acc += wt * radial(h, pn * (phi - phi_p).cos())?;
                }
            }
            acc
        }
        _ => {
            // polar axis along p: dOmega = 2 pi d(cos theta)
            let mut acc = 0.0;
            for (a, b) in [(-1.0, 0.0), (0.0, 1.0)] {
                let (xs, ws) = gauss_legendre_on(12, a, b);
                for (mu, wt) in xs.iter().zip(&ws) {
                    acc += 2.0 * PI * wt * radial(h, pn * mu)?;
                }
            }
            acc
        }
    };
    Ok(adm.norm * total)
}

/// Directions `y` with quadrature weights for `int d^n y / |y|^n`.
#[derive(Clone, Debug)]
pub struct YGrid {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

fn log_radii(r_min: f64, r_max: f64, n_r: usize) -> Result<(Vec<f64>, Vec<f64>), AstError> {
    if !(r_min > 0.0 && r_max > r_min) || n_r < 2 {
        return Err(AstError::Invalid(format!("radial grid {r_min}..{r_max} x {n_r}")));
    }
    let du = (r_max / r_min).ln() / (n_r - 1) as f64;
    let r = (0..n_r).map(|k| r_min * (k as f64 * du).exp()).collect();
    Ok((r, quadrature::trapezoid_weights(n_r, du)))
}

impl YGrid {
    /// `y = +-r` with `r` log-spaced (one dimension).
    pub fn log_line(r_min: f64, r_max: f64, n_r: usize) -> Result<Self, AstError> {
        let (r, w) = log_radii(r_min, r_max, n_r)?;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for s in [1.0, -1.0] {
            for (ri, wi) in r.iter().zip(&w) {
                points.push(vec![s * ri]);
                weights.push(*wi);
            }
        }
        Ok(YGrid { points, weights })
    }

    /// `y = r (cos phi, sin phi)`, `r` log-spaced, `n_phi` equally spaced angles.
    pub fn polar(r_min: f64, r_max: f64, n_r: usize, n_phi: usize) -> Result<Self, AstError> {
        if n_phi == 0 {
            return Err(AstError::Invalid("no angles".into()));
        }
        let (r, w) = log_radii(r_min, r_max, n_r)?;
        let dphi = 2.0 * PI / n_phi as f64;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for k in 0..n_phi {
            let phi = (k as f64 + 0.5) * dphi;
            for (ri, wi) in r.iter().zip(&w) {
                points.push(vec![ri * phi.cos(), ri * phi.sin()]);
                weights.push(wi * dphi);
            }
        }
        Ok(YGrid { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `f_h(., y)` on the grid of `f` for every `y` of a [`YGrid`].
#[derive(Clone, Debug)]
pub struct XrayCoeffs {
    pub grid: YGrid,
    pub fields: Vec<FieldSample>,
}

pub fn xray_analyze(f: &FieldSample, h: &WaveletSpec, grid: &YGrid) -> Result<XrayCoeffs, AstError> {
    let mut fields = Vec::with_capacity(grid.len());
    for y in &grid.points {
        let vals = (0..f.len()).map(|i| windowed_xray(f, h, &f.point(i), y)).collect::<Result<Vec<_>, _>>()?;
        fields.push(f.with_values(vals));
    }
    Ok(XrayCoeffs { grid: grid.clone(), fields })
}

/// Frequencies of every mode, flattened `n` per mode.
fn mode_frequencies(s: &FieldSpectrum) -> Vec<f64> {
    (0..s.values.len()).flat_map(|i| s.frequency(i)).collect()
}

/// Same coefficients from `FT_x[f_h(., y)](p) = f^(p) conj(h^(p.y))`.
///
/// `f` is zero-padded by `pad` (centered) first and the fields live on the
/// padded grid; `f_h` is periodic over that box. Needs only `h^`.
pub fn xray_analyze_spectral(f: &FieldSample, h: &WaveletSpec, grid: &YGrid, pad: usize) -> Result<XrayCoeffs, AstError> {
    let big = f.zero_padded_centered(pad)?;
    let s = FieldSpectrum::of(&big);
    let modes = mode_frequencies(&s);
    let mut fields = Vec::with_capacity(grid.len());
    for y in &grid.points {
        if y.len() != big.ndim() {
            return Err(AstError::Dimension(format!("direction has {} components", y.len())));
        }
        let mut sy = s.clone();
        for (v, p) in sy.values.iter_mut().zip(modes.chunks_exact(y.len())) {
            let py: f64 = p.iter().zip(y).map(|(a, b)| a * b).sum();
            *v *= h.fourier(py).conj();
        }
        fields.push(inverse_spectrum(&sy, &big));
    }
    Ok(XrayCoeffs { grid: grid.clone(), fields })
}

#[derive(Clone, Debug)]
pub struct XrayReconstruction {
    pub field: FieldSample,
    pub rel_error: Option<f64>,
}

/// `f^(p) = N sum_y w_y h^(p.y) FT_x[f_h(., y)](p)`, then back to the grid.
///
/// The per-direction transforms use the DFT of the sampled `f_h`, so `f_h` is
/// treated as periodic over the grid box.
pub fn xray_reconstruct(
    coeffs: &XrayCoeffs,
    h: &WaveletSpec,
    reference: Option<&FieldSample>,
) -> Result<XrayReconstruction, AstError> {
    let first = coeffs.fields.first().ok_or_else(|| AstError::Invalid("no directions".into()))?;
    let n = first.ndim();
    let adm = xray_admissibility(h, n)?;
    let mut acc: Option<(FieldSpectrum, Vec<f64>)> = None;
    for (y, (w, fh)) in coeffs.grid.points.iter().zip(coeffs.grid.weights.iter().zip(&coeffs.fields)) {
        if y.len() != n || fh.dims() != first.dims() {
            return Err(AstError::Dimension("coefficient fields do not share one grid".into()));
        }
        let s = FieldSpectrum::of(fh);
        let (total, modes) = acc.get_or_insert_with(|| {
            let modes = mode_frequencies(&s);
            (FieldSpectrum { values: vec![C64::new(0.0, 0.0); s.values.len()], ..s.clone() }, modes)
        });
        for ((t, v), p) in total.values.iter_mut().zip(&s.values).zip(modes.chunks_exact(n)) {
            let py: f64 = p.iter().zip(y).map(|(a, b)| a * b).sum();
            *t += h.fourier(py) * v * (adm.norm * w);
        }
    }
    let acc = acc.map(|(s, _)| s);
    let field = inverse_spectrum(&acc.unwrap(), first);
    let rel_error = reference.map(|r| {
        // compare at the reference sample points, which may be a sub-box
        let num: f64 = (0..r.len()).map(|i| (field.interpolate_cubic(&r.point(i)) - r.values()[i]).norm_sqr()).sum();
        let den: f64 = r.values().iter().map(|v| v.norm_sqr()).sum();
        if den == 0.0 { num.sqrt() } else { (num / den).sqrt() }
    });
    Ok(XrayReconstruction { field, rel_error })
}
