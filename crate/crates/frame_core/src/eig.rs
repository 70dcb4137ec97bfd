use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

const DENSE_LIMIT: usize = 512;
const ITER_RTOL: f64 = 1e-10;
const ITER_MAX: usize = 20_000;

/// Smallest and largest eigenvalue of a Hermitian matrix.
///
/// Dense decomposition up to dimension 512, power / inverse-power iteration
/// above that.
pub fn hermitian_extremes(g: &DMatrix<Complex64>) -> (f64, f64) {
    let d = g.nrows();
    if d <= DENSE_LIMIT {
        let ev = g.clone().symmetric_eigenvalues();
        let lo = ev.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ev.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        return (lo, hi);
    }
    let hi = power(|v| g * v, d);
    let lo = match g.clone().cholesky() {
        Some(ch) => {
            let inv_top = power(|v| ch.solve(v), d);
            if inv_top > 0.0 {
                1.0 / inv_top
            } else {
                0.0
            }
        }
        None => 0.0,
    };
    (lo, hi)
}

fn power<F: Fn(&DVector<Complex64>) -> DVector<Complex64>>(apply: F, d: usize) -> f64 {
    // deterministic start with all components excited
    let mut v = DVector::from_fn(d, |i, _| Complex64::new(1.0 + (i as f64 * 0.618_033_988_7).fract(), 0.0));
    v /= Complex64::new(v.norm(), 0.0);
    let mut lambda = 0.0;
    for _ in 0..ITER_MAX {
        let w = apply(&v);
        let next = v.dotc(&w).re;
        let n = w.norm();
        if n == 0.0 {
            return 0.0;
        }
        v = w / Complex64::new(n, 0.0);
        if (next - lambda).abs() <= ITER_RTOL * next.abs() {
            return next;
        }
        lambda = next;
    }
    lambda
}
