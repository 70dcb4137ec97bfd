use std::f64::consts::FRAC_PI_2;

use crate::WaveletError;

/// Smoothness of the transition function `eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Finite(u32),
    Infinite,
}

fn smoothstep(k: u32, x: f64) -> f64 {
    // regularized incomplete beta I_x(k+1, k+1) = x^{k+1} sum_j C(k+j, j) (1-x)^j
    let y = 1.0 - x;
    let mut c = 1.0;
    let mut sum = 0.0;
    let mut yj = 1.0;
    for j in 0..=k {
        if j > 0 {
            c *= (k + j) as f64 / j as f64;
            yj *= y;
        }
        sum += c * yj;
    }
    x.powi(k as i32 + 1) * sum
}

fn bump_step(x: f64) -> f64 {
    let psi = |u: f64| if u <= 0.0 { 0.0 } else { (-1.0 / u).exp() };
    let p = psi(x);
    let q = psi(1.0 - x);
    p / (p + q)
}

/// `eta(x)`: 0 for `x <= 0`, `pi/2` for `x >= 1`, `C^k` (or smooth) in between.
pub fn eta(x: f64, smooth: Smoothness) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return FRAC_PI_2;
    }
    FRAC_PI_2
        * match smooth {
            Smoothness::Finite(k) => smoothstep(k, x),
            Smoothness::Infinite => bump_step(x),
        }
}

/// Band-pass profiles `k+` and `k-` with centre frequency `F = a / ((a^2 - 1) b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeyerPair {
    pub a: f64,
    pub b: f64,
    pub smooth: Smoothness,
    pub f_center: f64,
}

pub fn build_meyer_pair(a: f64, b: f64, smooth: Smoothness) -> Result<MeyerPair, WaveletError> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(WaveletError::Invalid(format!("scale base a = {a} must exceed 1")));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(WaveletError::Invalid(format!("time step b = {b} must be positive")));
    }
    Ok(MeyerPair { a, b, smooth, f_center: a / ((a * a - 1.0) * b) })
}

impl MeyerPair {
    /// Support `[F/a, aF]` of `k+`.
    pub fn support(&self) -> (f64, f64) {
        (self.f_center / self.a, self.a * self.f_center)
    }

    /// Band width `(a - 1/a) F`, equal to `1/b`.
    pub fn width(&self) -> f64 {
        (self.a - 1.0 / self.a) * self.f_center
    }

    pub fn k_plus(&self, nu: f64) -> f64 {
        let f = self.f_center;
        let a = self.a;
        if nu <= f / a || nu >= a * f {
            0.0
        } else if nu <= f {
            eta((nu - f / a) / (f - f / a), self.smooth).sin()
        } else {
            eta((nu - f) / (a * f - f), self.smooth).cos()
        }
    }

    pub fn k_minus(&self, nu: f64) -> f64 {
        self.k_plus(-nu)
    }

    /// `sum_m |k+(a^m nu)|^2`.
    pub fn chi_plus(&self, nu: f64) -> f64 {
        if nu <= 0.0 {
            return 0.0;
        }
        let m0 = ((self.f_center / (self.a * nu)).ln() / self.a.ln()).ceil() as i32;
        (m0 - 2..=m0 + 2).map(|m| self.k_plus(self.a.powi(m) * nu).powi(2)).sum()
    }

    pub fn chi_minus(&self, nu: f64) -> f64 {
        self.chi_plus(-nu)
    }

    /// `sum_{m in range} (|k+(a^m nu)|^2 + |k-(a^m nu)|^2)` for a finite scale range.
    pub fn chi_range(&self, nu: f64, m_range: (i64, i64)) -> f64 {
        (m_range.0..=m_range.1)
            .map(|m| {
                let x = self.a.powi(m as i32) * nu;
                self.k_plus(x).powi(2) + self.k_minus(x).powi(2)
            })
            .sum()
    }
}

/// Samples of `chi+` and `chi-` and the worst deviation of their sum from 1 off `nu = 0`.
#[derive(Clone, Debug)]
pub struct ChiPartition {
    pub nus: Vec<f64>,
    pub chi_plus: Vec<f64>,
    pub chi_minus: Vec<f64>,
    pub max_deviation: f64,
}

pub fn chi_partition(pair: &MeyerPair, nus: &[f64]) -> ChiPartition {
    let chi_plus: Vec<f64> = nus.iter().map(|&v| pair.chi_plus(v)).collect();
    let chi_minus: Vec<f64> = nus.iter().map(|&v| pair.chi_minus(v)).collect();
    let max_deviation = nus
        .iter()
        .zip(chi_plus.iter().zip(&chi_minus))
        .filter(|(v, _)| **v != 0.0)
        .map(|(_, (p, m))| (p + m - 1.0).abs())
        .fold(0.0, f64::max);
    ChiPartition { nus: nus.to_vec(), chi_plus, chi_minus, max_deviation }
}
