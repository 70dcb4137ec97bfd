//! Modified Bessel functions of the second kind `K_nu` for real `nu >= 0`.
//!
//! Temme's series for `|w| < 2`, Steed's continued fraction otherwise, then
//! upward recurrence in the order. Half-integer orders use the terminating
//! elementary form. Complex arguments are accepted off the negative real axis.

use std::f64::consts::PI;

use crate::C64;

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 200_000;
const SERIES_RADIUS: f64 = 2.0;

/// `K_nu(x)` for real `x > 0`.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    bessel_k_scaled(nu, x) * (-x).exp()
}

/// `e^x K_nu(x)`, finite for large `x`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> f64 {
    if x <= 0.0 || x.is_nan() {
        return f64::NAN;
    }
    bessel_k_seq(nu, C64::new(x, 0.0), 1)[0].re
}

/// `K_nu(w)` for complex `w` with `Re w > 0` or off the negative real axis.
pub fn bessel_k_complex(nu: f64, w: C64) -> C64 {
    bessel_k_seq(nu, w, 1)[0] * (-w).exp()
}

/// `e^w K_{nu+j}(w)` for `j = 0..count`.
pub fn bessel_k_seq(nu: f64, w: C64, count: usize) -> Vec<C64> {
    assert!(nu >= 0.0 && count > 0);
    if w.norm() == 0.0 || !(w.re.is_finite() && w.im.is_finite()) || (w.re <= 0.0 && w.im == 0.0) {
        return vec![C64::new(f64::NAN, f64::NAN); count];
    }
    let two_nu = 2.0 * nu;
    if (two_nu - two_nu.round()).abs() < 1e-14 && two_nu.round() as i64 % 2 == 1 {
        let n = (nu - 0.5).round() as usize;
        return (0..count).map(|j| half_integer_scaled(n + j, w)).collect();
    }
    let nl = (nu + 0.5).floor() as usize;
    let mu = nu - nl as f64;
    let (mut k0, mut k1) = if w.norm() < SERIES_RADIUS { temme(mu, w) } else { steed(mu, w) };
    let two_over = 2.0 / w;
    for i in 1..=nl {
        let next = two_over * (mu + i as f64) * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    let mut out = Vec::with_capacity(count);
    out.push(k0);
    if count > 1 {
        out.push(k1);
    }
    for j in 2..count {
        let order = nu + (j - 1) as f64;
        let next = two_over * order * out[j - 1] + out[j - 2];
        out.push(next);
    }
    out
}

/// `e^w K_{n+1/2}(w)` from the terminating sum.
fn half_integer_scaled(n: usize, w: C64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let inv = 1.0 / (2.0 * w);
    for k in 0..n {
        // (n+k+1)!/((k+1)!(n-k-1)!) over (n+k)!/(k!(n-k)!)
        let ratio = ((n + k + 1) * (n - k)) as f64 / (k + 1) as f64;
        term = term * ratio * inv;
        sum += term;
    }
    (PI / (2.0 * w)).sqrt() * sum
}

fn chebev(c: &[f64], x: f64) -> f64 {
    let y2 = 2.0 * x;
    let (mut d, mut dd) = (0.0, 0.0);
    for &cj in c[1..].iter().rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    x * d - dd + 0.5 * c[0]
}

/// `(1/G(1-mu) - 1/G(1+mu)) / 2mu`, `(1/G(1-mu) + 1/G(1+mu)) / 2`,
/// `1/G(1+mu)` and `1/G(1-mu)` for `|mu| <= 1/2`.
fn gamma_pieces(mu: f64) -> (f64, f64, f64, f64) {
    const C1: [f64; 7] =
        [-1.142022680371168e0, 6.5165112670737e-3, 3.087090173086e-4, -3.4706269649e-6, 6.9437664e-9, 3.67795e-11, -1.356e-13];
    const C2: [f64; 8] = [
        1.843740587300905e0,
        -7.68528408447867e-2,
        1.2719271366546e-3,
        -4.9717367042e-6,
        -3.31261198e-8,
        2.423096e-10,
        -1.702e-13,
        -1.49e-15,
    ];
    let xx = 8.0 * mu * mu - 1.0;
    let g1 = chebev(&C1, xx);
    let g2 = chebev(&C2, xx);
    (g1, g2, g2 - mu * g1, g2 + mu * g1)
}

/// Scaled `K_mu`, `K_{mu+1}` by Temme's series.
fn temme(mu: f64, w: C64) -> (C64, C64) {
    let x2 = w * 0.5;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = d * mu;
    let fact2 = if e.norm() < EPS { C64::new(1.0, 0.0) } else { e.sinh() / e };
    let (g1, g2, gampl, gammi) = gamma_pieces(mu);
    let mut ff = (e.cosh() * g1 + fact2 * d * g2) * fact;
    let mut sum = ff;
    let ee = e.exp();
    let mut p = ee * 0.5 / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = C64::new(1.0, 0.0);
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (ff * fi + p + q) / (fi * fi - mu2);
        c = c * dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - ff * fi);
        if del.norm() < sum.norm() * EPS {
            break;
        }
    }
    let scale = w.exp();
    (sum * scale, sum1 * (2.0 / w) * scale)
}

/// Scaled `K_mu`, `K_{mu+1}` by Steed's continued fraction.
fn steed(mu: f64, w: C64) -> (C64, C64) {
    let mut b = (w + 1.0) * 2.0;
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = C64::new(0.0, 0.0);
    let mut q2 = C64::new(1.0, 0.0);
    let a1 = 0.25 - mu * mu;
    let mut q = C64::new(a1, 0.0);
    let mut c = a1;
    let mut a = -a1;
    let mut s = q * delh + 1.0;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += qnew * c;
        b += 2.0;
        d = 1.0 / (b + d * a);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).norm() < EPS {
            break;
        }
    }
    h *= a1;
    let kmu = (PI / (2.0 * w)).sqrt() / s;
    let k1 = kmu * (w + mu + 0.5 - h) / w;
    (kmu, k1)
}
