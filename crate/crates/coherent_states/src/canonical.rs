use std::f64::consts::PI;

use windowed_fourier::{SampledSignal, TimeGrid};

use crate::grid::{inner, same_grid, LabelGrid};
use crate::{CsError, C64};

/// `chi_z(x') = pi^{-1/4} exp[-zbar^2/4 + zbar x' - x'^2/2]` with `z = x - ip`.
pub fn canonical_cs_eval(z: C64, x: f64) -> C64 {
    let zb = z.conj();
    (-zb * zb / 4.0 + zb * x - x * x / 2.0).exp() * PI.powf(-0.25)
}

/// Canonical coherent state with label `z = x - ip`.
///
/// Only `chi_0` is normalized; `||chi_z||^2 = e^{|z|^2/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalCS {
    pub z: C64,
}

impl CanonicalCS {
    pub fn new(x: f64, p: f64) -> Self {
        CanonicalCS { z: C64::new(x, -p) }
    }

    pub fn from_label(z: C64) -> Self {
        CanonicalCS { z }
    }

    pub fn position(&self) -> f64 {
        self.z.re
    }

    pub fn momentum(&self) -> f64 {
        -self.z.im
    }

    pub fn eval(&self, x: f64) -> C64 {
        canonical_cs_eval(self.z, x)
    }

    pub fn sample(&self, grid: TimeGrid) -> Result<SampledSignal, CsError> {
        Ok(SampledSignal::from_fn(grid, |x| self.eval(x))?)
    }

    pub fn norm_sqr(&self) -> f64 {
        (self.z.norm_sqr() / 2.0).exp()
    }
}

/// Density of `dmu(z) = (2 pi)^{-1} e^{-|z|^2/2} dx dp`.
pub fn canonical_measure(z: C64) -> f64 {
    (-z.norm_sqr() / 2.0).exp() / (2.0 * PI)
}

/// `f~(z) = <chi_z|f>` by the trapezoid rule on the grid of `f`.
pub fn bargmann_transform(f: &SampledSignal, zs: &[C64]) -> Vec<C64> {
    let w = quadrature::trapezoid_weights(f.len(), f.dt());
    zs.iter()
        .map(|&z| {
            f.samples()
                .iter()
                .zip(&w)
                .enumerate()
                .map(|(i, (v, w))| canonical_cs_eval(z, f.time(i)).conj() * v * *w)
                .sum()
        })
        .collect()
}

/// `int dmu(z) |f~(z)|^2` over the label grid.
pub fn bargmann_norm(ftilde: &[C64], grid: &LabelGrid) -> Result<f64, CsError> {
    check_len(ftilde, grid)?;
    Ok(grid.points.iter().zip(&grid.weights).zip(ftilde).map(|((z, w), f)| w * canonical_measure(*z) * f.norm_sqr()).sum())
}

/// `f(x') = int dmu(z) chi_z(x') f~(z)` on `like`'s grid.
pub fn bargmann_reconstruct(ftilde: &[C64], grid: &LabelGrid, like: TimeGrid) -> Result<SampledSignal, CsError> {
    check_len(ftilde, grid)?;
    let mut out = vec![C64::new(0.0, 0.0); like.n];
    for ((z, w), f) in grid.points.iter().zip(&grid.weights).zip(ftilde) {
        let c = f * (w * canonical_measure(*z));
        for (i, o) in out.iter_mut().enumerate() {
            *o += canonical_cs_eval(*z, like.time(i)) * c;
        }
    }
    Ok(SampledSignal::new(out, like.t0, like.dt)?)
}

fn check_len(ftilde: &[C64], grid: &LabelGrid) -> Result<(), CsError> {
    if ftilde.len() != grid.len() {
        return Err(CsError::Grid(format!("{} values for {} labels", ftilde.len(), grid.len())));
    }
    Ok(())
}

/// `max |<f|g> - int dmu(z) <f|chi_z><chi_z|g>|` over all pairs of test vectors.
///
/// An empty label grid gives `max |<f|g>|`.
pub fn canonical_resolution_check(grid: &LabelGrid, tests: &[SampledSignal]) -> Result<f64, CsError> {
    for t in tests {
        same_grid(&tests[0], t)?;
    }
    let tilde: Vec<Vec<C64>> = tests.iter().map(|f| bargmann_transform(f, &grid.points)).collect();
    let mut worst: f64 = 0.0;
    for (i, f) in tests.iter().enumerate() {
        for (j, g) in tests.iter().enumerate() {
            let exact = inner(f, g)?;
            let approx: C64 = grid
                .points
                .iter()
                .zip(&grid.weights)
                .enumerate()
                .map(|(k, (z, w))| tilde[i][k].conj() * tilde[j][k] * (w * canonical_measure(*z)))
                .sum();
            worst = worst.max((exact - approx).norm());
        }
    }
    Ok(worst)
}

/// `|d f~ / d zbar|` at `z` by central differences of step `h`, where
/// `d/dzbar = (d/da + i d/db) / 2` for `z = a + ib`.
pub fn bargmann_dbar(f: &SampledSignal, z: C64, h: f64) -> f64 {
    let pts = [z + h, z - h, z + C64::new(0.0, h), z - C64::new(0.0, h)];
    let v = bargmann_transform(f, &pts);
    let da = (v[0] - v[1]) / (2.0 * h);
    let db = (v[2] - v[3]) / (2.0 * h);
    ((da + C64::new(0.0, 1.0) * db) * 0.5).norm()
}
