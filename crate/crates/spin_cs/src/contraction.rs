use nalgebra::DMatrix;

use crate::frames::holo_cs_vector;
use crate::rep::SpinRep;
use crate::{SpinError, C64};

/// Largest accepted distance between the evolved vector and `h_{zeta'}`.
pub const EVOLUTION_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evolution {
    /// `e^{it} zeta`.
    pub zeta: C64,
    /// Phase with `exp(-it N_-) h_zeta = phase * h_{zeta'}`.
    pub phase: C64,
    /// Relative residual after removing the phase.
    pub mismatch: f64,
}

/// Evolves `h_zeta` under `exp(-it N_-)`, `N_- = S_3 + s`, by matrix
/// exponential and compares with the directly built `h_{e^{it} zeta}`.
pub fn oscillator_evolve(rep: &SpinRep, zeta: C64, t: f64) -> Result<Evolution, SpinError> {
    if !t.is_finite() {
        return Err(SpinError::Label(format!("t = {t}")));
    }
    let d = rep.dim();
    let n_minus = rep.s3() + DMatrix::<C64>::identity(d, d) * C64::new(rep.spin(), 0.0);
    let u = (n_minus * C64::new(0.0, -t)).exp();
    let evolved = u * holo_cs_vector(rep, zeta)?;
    let zeta_t = zeta * C64::cis(t);
    let target = holo_cs_vector(rep, zeta_t)?;
    let tn = target.norm_squared();
    let phase = target.dotc(&evolved) / tn;
    let mismatch = (&evolved - &target * phase).norm() / tn.sqrt();
    if mismatch > EVOLUTION_TOL {
        return Err(SpinError::Mismatch { value: mismatch });
    }
    Ok(Evolution { zeta: zeta_t, phase, mismatch })
}

/// Weak-limit defects of the rescaled generators on `w_0 .. w_{n_max}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionReport {
    pub spin: f64,
    /// `|<w_k|K_+ w_n> - <w_k|A* w_n>|`, indexed `[k][n]`.
    pub plus: Vec<Vec<f64>>,
    /// `|<w_k|K_- w_n> - <w_k|A w_n>|`.
    pub minus: Vec<Vec<f64>>,
    /// `<w_n|K_3 w_n>`.
    pub k3: Vec<f64>,
}

impl ContractionReport {
    /// Largest ladder defect.
    pub fn max_ladder(&self) -> f64 {
        self.plus.iter().chain(&self.minus).flatten().fold(0.0, |a, &b| a.max(b))
    }

    /// Largest `|<w_n|K_3 w_n> + 1|`.
    pub fn max_k3(&self) -> f64 {
        self.k3.iter().fold(0.0, |a, &b| a.max((b + 1.0).abs()))
    }
}

/// `<w_k|S_+ w_n>` with `w_n = v_{n-s}` and `S w_n = 0` for `n > 2s`.
fn raise_element(rep: &SpinRep, k: usize, n: usize) -> f64 {
    let two_s = rep.twice_spin();
    if n >= two_s || k != n + 1 {
        return 0.0;
    }
    rep.raise(two_s - n)
}

fn lower_element(rep: &SpinRep, k: usize, n: usize) -> f64 {
    let two_s = rep.twice_spin();
    if n > two_s || n == 0 || k + 1 != n {
        return 0.0;
    }
    rep.lower(two_s - n)
}

/// `K_± = S_±/sqrt(s+1)`, `K_3 = S_3/(s+1)` against `A* w_n = sqrt(2n+2) w_{n+1}`,
/// `A w_n = sqrt(2n) w_{n-1}` and `-1`.
pub fn contraction_defect(rep: &SpinRep, n_max: usize) -> ContractionReport {
    let s = rep.spin();
    let scale = (s + 1.0).sqrt();
    let n = n_max + 1;
    let mut plus = vec![vec![0.0; n]; n];
    let mut minus = vec![vec![0.0; n]; n];
    for k in 0..n {
        for j in 0..n {
            let a_star = if k == j + 1 { (2.0 * j as f64 + 2.0).sqrt() } else { 0.0 };
            let a = if k + 1 == j { (2.0 * j as f64).sqrt() } else { 0.0 };
            plus[k][j] = (raise_element(rep, k, j) / scale - a_star).abs();
            minus[k][j] = (lower_element(rep, k, j) / scale - a).abs();
        }
    }
    let two_s = rep.twice_spin();
    let k3 = (0..n).map(|j| if j <= two_s { (j as f64 - s) / (s + 1.0) } else { 0.0 }).collect();
    ContractionReport { spin: s, plus, minus, k3 }
}

/// `|<w_k|N_- w_n> - n delta_kn|` with `N_- = S_3 + s`; vectors past `2s`
/// get `N_- w_n = s w_n`.
pub fn nminus_limit(rep: &SpinRep, n_max: usize) -> Vec<Vec<f64>> {
    let s = rep.spin();
    let two_s = rep.twice_spin();
    (0..=n_max)
        .map(|k| {
            (0..=n_max)
                .map(|j| {
                    if k != j {
                        return 0.0;
                    }
                    let eig = if j <= two_s { rep.weight(two_s - j) + s } else { s };
                    (eig - j as f64).abs()
                })
                .collect()
        })
        .collect()
}
