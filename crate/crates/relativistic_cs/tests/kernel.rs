use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relativistic_cs::*;
use statrs::function::gamma::gamma;

fn shell(m: f64, s: usize) -> MassShell {
    MassShell::new(m, s).unwrap()
}

/// `G` from the hyperbolic-angle integral.
fn g_sinh(sh: &MassShell, lambda: f64) -> f64 {
    let s = sh.dim() as f64;
    let m = sh.mass();
    let t_max = (60.0 / (2.0 * lambda * m) + 2.0).acosh() + 2.0;
    let i = quadrature::adaptive_real(|t| t.sinh().powf(s - 1.0) * (-2.0 * lambda * m * t.cosh()).exp(), 0.0, t_max, 0.0, 1e-13, 20000)
        .unwrap();
    m.powf(s - 1.0) / ((4.0 * PI).powf(s / 2.0) * gamma(s / 2.0)) * i
}

fn point(x: &[f64], y: &[f64]) -> TubePoint {
    TubePoint::new(x.to_vec(), y.to_vec()).unwrap()
}

fn random_forward(rng: &mut ChaCha8Rng, s: usize) -> TubePoint {
    let x: Vec<f64> = (0..=s).map(|_| rng.random_range(-2.0..2.0)).collect();
    let mut y: Vec<f64> = (0..=s).map(|_| rng.random_range(-1.0..1.0)).collect();
    let space: f64 = y[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    y[0] = space + rng.random_range(0.1..1.5);
    point(&x, &y)
}

#[test]
fn closed_norm_matches_quadrature() {
    for s in 1..=4 {
        for m in [0.5, 1.0, 2.0] {
            for lambda in [0.05, 0.3, 1.0, 4.0] {
                let sh = shell(m, s);
                let c = ez_norm_sq(&sh, lambda, NormMethod::Closed).unwrap();
                let q = ez_norm_sq(&sh, lambda, NormMethod::Quadrature).unwrap();
                assert!((c / q - 1.0).abs() < 1e-6, "s={s} m={m} l={lambda}: {c} vs {q}");
                assert!((c / g_sinh(&sh, lambda) - 1.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn one_dimensional_norm_is_k0() {
    for lambda in [0.2, 1.0, 3.0] {
        let g = ez_norm_sq(&shell(1.5, 1), lambda, NormMethod::Closed).unwrap();
        assert!((g - bessel_k(0.0, 3.0 * lambda) / (2.0 * PI)).abs() < 1e-15);
    }
}

#[test]
fn norm_near_the_boundary() {
    for s in [2, 3] {
        let sh = shell(1.0, s);
        let nu = sh.nu();
        let lambda = 1e-3;
        let g = ez_norm_sq(&sh, lambda, NormMethod::Closed).unwrap();
        let asym = gamma(nu) * (4.0 * PI).powf(-nu - 1.0) * lambda.powf(-2.0 * nu);
        assert!((g / asym - 1.0).abs() < 0.02, "s={s}: {g} vs {asym}");
    }
}

#[test]
fn norm_rejects_nonpositive_lambda() {
    let sh = shell(1.0, 3);
    for l in [0.0, -1.0, f64::NAN] {
        assert!(matches!(ez_norm_sq(&sh, l, NormMethod::Closed), Err(RelError::NonPositive { .. })));
        assert!(ez_norm_sq(&sh, l, NormMethod::Quadrature).is_err());
    }
}

#[test]
fn kernel_on_the_diagonal_is_the_norm() {
    for s in 1..=3 {
        let sh = shell(1.2, s);
        let mut y = vec![0.0; s + 1];
        y[0] = 1.1;
        y[1] = 0.4;
        let z = point(&vec![0.3; s + 1], &y);
        let lambda = z.lambda(1.0).unwrap();
        let k = kernel_eval(&sh, &z, &z).unwrap();
        let g = ez_norm_sq(&sh, lambda, NormMethod::Closed).unwrap();
        assert!((k.re / g - 1.0).abs() < 1e-12 && k.im.abs() < 1e-14 * g);
    }
}

/// `int dp~ exp(-i w p)` with `w = z' - conj z`, one space dimension.
fn kernel_quadrature_1d(m: f64, w: [C64; 2]) -> C64 {
    let p_max = 60.0 / (-w[0].im - w[1].im.abs()).max(1e-3) + 10.0;
    quadrature::adaptive(
        |p| {
            let om = (m * m + p * p).sqrt();
            (-C64::i() * (w[0] * om - w[1] * p)).exp() / (4.0 * PI * om)
        },
        -p_max,
        p_max,
        0.0,
        1e-12,
        50000,
    )
    .unwrap()
    .value
}

/// Radial form for three space dimensions.
fn kernel_quadrature_3d(m: f64, w: &[C64]) -> C64 {
    let k = (w[1] * w[1] + w[2] * w[2] + w[3] * w[3]).sqrt();
    let spatial_im = (w[1].im.powi(2) + w[2].im.powi(2) + w[3].im.powi(2)).sqrt();
    let p_max = 60.0 / (-w[0].im - spatial_im).max(1e-3) + 10.0;
    let r = quadrature::adaptive(
        |p| {
            let om = (m * m + p * p).sqrt();
            let sinc = if p == 0.0 { C64::new(1.0, 0.0) } else { (k * p).sin() / (k * p) };
            (-C64::i() * w[0] * om).exp() * sinc * p * p / (2.0 * om)
        },
        0.0,
        p_max,
        0.0,
        1e-12,
        50000,
    )
    .unwrap()
    .value;
    r * 4.0 * PI / (2.0 * PI).powi(3)
}

fn separation(a: &TubePoint, b: &TubePoint) -> Vec<C64> {
    a.components(1.0).iter().zip(b.components(1.0)).map(|(u, v)| u - v.conj()).collect()
}

#[test]
fn purely_imaginary_separation_gives_a_real_kernel() {
    let sh = shell(1.0, 1);
    let a = point(&[0.5, -0.2], &[1.0, 0.3]);
    let b = point(&[0.5, -0.2], &[0.7, -0.1]);
    let k = kernel_eval(&sh, &a, &b).unwrap();
    assert!(k.re > 0.0 && k.im.abs() < 1e-15);
    let w = separation(&a, &b);
    let q = kernel_quadrature_1d(1.0, [w[0], w[1]]);
    assert!((k - q).norm() < 1e-10 * q.norm());
}

#[test]
fn kernel_matches_momentum_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (a, b) = (random_forward(&mut rng, 1), random_forward(&mut rng, 1));
        let k = kernel_eval(&shell(0.8, 1), &a, &b).unwrap();
        let w = separation(&a, &b);
        let q = kernel_quadrature_1d(0.8, [w[0], w[1]]);
        assert!((k - q).norm() < 1e-8 * q.norm(), "{k} vs {q}");
    }
    for _ in 0..10 {
        let (a, b) = (random_forward(&mut rng, 3), random_forward(&mut rng, 3));
        let k = kernel_eval(&shell(1.0, 3), &a, &b).unwrap();
        let q = kernel_quadrature_3d(1.0, &separation(&a, &b));
        assert!((k - q).norm() < 1e-7 * q.norm(), "{k} vs {q}");
    }
}

#[test]
fn kernel_is_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in 1..=4 {
        let sh = shell(1.0, s);
        for _ in 0..25 {
            let (a, b) = (random_forward(&mut rng, s), random_forward(&mut rng, s));
            let kab = kernel_eval(&sh, &a, &b).unwrap();
            let kba = kernel_eval(&sh, &b, &a).unwrap();
            assert!((kab - kba.conj()).norm() < 1e-10 * kab.norm().max(1e-300));
        }
    }
}

#[test]
fn kernel_rejects_points_outside_the_tube() {
    let sh = shell(1.0, 1);
    let good = point(&[0.0, 0.0], &[1.0, 0.0]);
    for y in [[0.5, 0.5], [-1.0, 0.0], [0.2, -0.9]] {
        let bad = point(&[0.0, 0.0], &y);
        assert_eq!(kernel_eval(&sh, &good, &bad), Err(RelError::NotForward));
        assert_eq!(kernel_eval(&sh, &bad, &good), Err(RelError::NotForward));
    }
    let wrong = point(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]);
    assert!(matches!(kernel_eval(&sh, &good, &wrong), Err(RelError::Length { .. })));
}

fn ln_g(sh: &MassShell, y: &[f64]) -> f64 {
    ez_norm_sq(sh, sh.forward_lambda(y).unwrap(), NormMethod::Closed).unwrap().ln()
}

#[test]
fn momentum_is_minus_half_the_log_gradient() {
    for s in 1..=3 {
        let sh = shell(1.3, s);
        let mut y = vec![0.0; s + 1];
        y[0] = 1.4;
        for (k, v) in y.iter_mut().enumerate().skip(1) {
            *v = 0.3 / k as f64;
        }
        let p = expected_momentum(&sh, &y).unwrap();
        let h = 1e-5;
        for mu in 0..=s {
            let (mut a, mut b) = (y.clone(), y.clone());
            a[mu] += h;
            b[mu] -= h;
            let fd = -0.5 * (ln_g(&sh, &a) - ln_g(&sh, &b)) / (2.0 * h);
            assert!((p[mu] - fd).abs() < 1e-6 * p[0], "s={s} mu={mu}: {} vs {fd}", p[mu]);
        }
    }
}

#[test]
fn rest_frame_momentum_is_pure_energy() {
    let p = expected_momentum(&shell(1.0, 3), &[0.8, 0.0, 0.0, 0.0]).unwrap();
    assert!(p[0] > 1.0);
    assert!(p[1..].iter().all(|v| *v == 0.0));
}

#[test]
fn momentum_limits() {
    // lambda m c = 50
    let sh = shell(1.0, 1);
    let y = [50.0 * 1.25, 50.0 * 0.75];
    let lambda = sh.forward_lambda(&y).unwrap();
    let p = expected_momentum(&sh, &y).unwrap();
    let yl = lower(&y);
    for mu in 0..2 {
        assert!((p[mu] / (yl[mu] / lambda) - 1.0).abs() < 0.01);
    }
    // lambda m c = 1e-3, s = 3
    let sh = shell(1.0, 3);
    let y = [1.25e-3, 0.75e-3, 0.0, 0.0];
    let lambda = sh.forward_lambda(&y).unwrap();
    let p = expected_momentum(&sh, &y).unwrap();
    let yl = lower(&y);
    for mu in 0..2 {
        let want = sh.nu() / (lambda * lambda) * yl[mu];
        assert!((p[mu] / want - 1.0).abs() < 0.02);
    }
}

#[test]
fn effective_mass_exceeds_the_rest_mass() {
    for s in 1..=4 {
        let sh = shell(0.7, s);
        for k in 0..20 {
            let lambda = 10f64.powf(-3.0 + 5.0 * k as f64 / 19.0);
            let ml = effective_mass(&sh, lambda).unwrap();
            assert!(ml > sh.mass(), "s={s} lambda={lambda}");
        }
    }
    let sh = shell(1.0, 1);
    assert!((effective_mass(&sh, 25.0).unwrap() - 1.0).abs() < 0.01);
    let direct = bessel_k(1.0, 1.4) / bessel_k(0.0, 1.4);
    assert!((effective_mass(&sh, 0.7).unwrap() - direct).abs() < 1e-14);
    assert!(effective_mass(&sh, 0.0).is_err());
}

#[test]
fn momentum_lies_on_the_effective_shell() {
    for s in 1..=3 {
        let sh = shell(1.1, s);
        let mut y = vec![0.2; s + 1];
        y[0] = 0.9;
        let lambda = sh.forward_lambda(&y).unwrap();
        let p = expected_momentum(&sh, &y).unwrap();
        let ml = effective_mass(&sh, lambda).unwrap();
        assert!((minkowski(&p, &p) - ml * ml).abs() < 1e-12 * ml * ml);
    }
}

#[test]
fn momentum_rejects_spacelike_y() {
    assert_eq!(expected_momentum(&shell(1.0, 1), &[0.3, 0.5]), Err(RelError::NotForward));
    assert!(correlation_matrix(&shell(1.0, 2), &[-1.0, 0.0, 0.0]).is_err());
    assert!(matches!(expected_momentum(&shell(1.0, 2), &[1.0, 0.0]), Err(RelError::Length { .. })));
}

#[test]
fn correlations_are_quarter_log_hessian() {
    let sh = shell(1.0, 3);
    let y = [1.0_f64.hypot(0.5), 0.3, -0.4, 0.0];
    assert!((sh.forward_lambda(&y).unwrap() - 1.0).abs() < 1e-15);
    let c = correlation_matrix(&sh, &y).unwrap();
    let h = 1e-3;
    let scale = c.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    for mu in 0..4 {
        for nu in 0..4 {
            assert_eq!(c[mu][nu], c[nu][mu]);
            let f = |a: f64, b: f64| {
                let mut v = y.to_vec();
                v[mu] += a;
                v[nu] += b;
                ln_g(&sh, &v)
            };
            let fd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h) / 4.0;
            assert!((c[mu][nu] - fd).abs() < 1e-5 * scale, "{mu}{nu}: {} vs {fd}", c[mu][nu]);
        }
    }
}

#[test]
fn rest_frame_variances_are_positive() {
    let c = correlation_matrix(&shell(1.0, 3), &[1.0, 0.0, 0.0, 0.0]).unwrap();
    for k in 0..4 {
        assert!(c[k][k] > 0.0);
    }
}

#[test]
fn measure_constant_limits_and_identity() {
    for s in 1..=4 {
        let sh = shell(1.3, s);
        let a0 = measure_constant(&sh, 0.0).unwrap();
        let small = measure_constant(&sh, 1e-5 / sh.mc()).unwrap();
        assert!((small / a0 - 1.0).abs() < 1e-4, "s={s}");
        for lambda in [0.1, 0.8, 3.0] {
            let a = measure_constant(&sh, lambda).unwrap();
            let g = ez_norm_sq(&sh, lambda, NormMethod::Closed).unwrap();
            let ml = effective_mass(&sh, lambda).unwrap();
            let rhs = (2.0 * PI * lambda / sh.mc()).powi(s as i32) * ml / sh.mass() * g;
            assert!((a / rhs - 1.0).abs() < 1e-10);
        }
    }
    assert!(measure_constant(&shell(1.0, 1), -0.5).is_err());
    assert!(MassShell::new(0.0, 1).is_err());
    assert!(MassShell::new(1.0, 0).is_err());
}

#[test]
fn hyperboloid_integral_is_two_p0_a() {
    let sh = shell(1.0, 1);
    for lambda in [0.5, 1.2] {
        for p in [0.0, 0.7, -1.5] {
            let p0 = sh.omega(&[p]);
            let j = quadrature::adaptive_real(
                |y| (-2.0 * ((lambda * lambda + y * y).sqrt() * p0 - y * p)).exp(),
                -80.0,
                80.0,
                0.0,
                1e-12,
                5000,
            )
            .unwrap();
            let want = 2.0 * p0 * measure_constant(&sh, lambda).unwrap();
            assert!((j / want - 1.0).abs() < 1e-5, "{j} vs {want}");
        }
    }
}

#[test]
fn bessel_recurrence_in_lambda() {
    for s in 1..=4 {
        let sh = shell(0.9, s);
        let (nu, m) = (sh.nu(), sh.mass());
        let f = |l: f64| l.powf(-nu) * bessel_k(nu, 2.0 * l * m);
        for lambda in [0.2, 1.0, 2.5] {
            let h = 1e-5;
            let lhs = -(f(lambda + h) - f(lambda - h)) / (2.0 * h);
            let rhs = 2.0 * m * lambda.powf(-nu) * bessel_k(nu + 1.0, 2.0 * lambda * m);
            assert!((lhs / rhs - 1.0).abs() < 1e-6);
        }
    }
}

#[test]
fn reverse_schwarz_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in 1..=3 {
        let sh = shell(1.4, s);
        for _ in 0..200 {
            let y = random_forward(&mut rng, s).y;
            let p: Vec<f64> = (0..s).map(|_| rng.random_range(-3.0..3.0)).collect();
            let lambda = sh.forward_lambda(&y).unwrap();
            assert!(temper_pairing(&sh, &y, &p).unwrap() >= lambda * sh.mass() * (1.0 - 1e-14));
            let parallel: Vec<f64> = y[1..].iter().map(|v| sh.mass() * v / lambda).collect();
            let eq = temper_pairing(&sh, &y, &parallel).unwrap();
            assert!((eq - lambda * sh.mass()).abs() < 1e-12 * eq);
        }
    }
}

/// Boost with rapidity `r` along axis `k`, then a rotation in the (1, 2) plane.
fn lorentz(s: usize, k: usize, r: f64, angle: f64) -> Vec<Vec<f64>> {
    let n = s + 1;
    let mut b = vec![vec![0.0; n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    b[0][0] = r.cosh();
    b[k][k] = r.cosh();
    b[0][k] = r.sinh();
    b[k][0] = r.sinh();
    let mut rot = vec![vec![0.0; n]; n];
    for (i, row) in rot.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if s >= 2 {
        rot[1][1] = angle.cos();
        rot[1][2] = -angle.sin();
        rot[2][1] = angle.sin();
        rot[2][2] = angle.cos();
    }
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| rot[i][l] * b[l][j]).sum()).collect()).collect()
}

fn act(l: &[Vec<f64>], v: &[f64], shift: &[f64]) -> Vec<f64> {
    l.iter().zip(shift).map(|(row, b)| row.iter().zip(v).map(|(a, x)| a * x).sum::<f64>() + b).collect()
}

#[test]
fn kernel_is_poincare_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sh = shell(1.0, 3);
    for _ in 0..30 {
        let (a, b) = (random_forward(&mut rng, 3), random_forward(&mut rng, 3));
        let l = lorentz(3, rng.random_range(1..4), rng.random_range(-1.5..1.5), rng.random_range(0.0..6.0));
        let shift: Vec<f64> = (0..4).map(|_| rng.random_range(-3.0..3.0)).collect();
        let zero = vec![0.0; 4];
        let ga = point(&act(&l, &a.x, &shift), &act(&l, &a.y, &zero));
        let gb = point(&act(&l, &b.x, &shift), &act(&l, &b.y, &zero));
        let k = kernel_eval(&sh, &a, &b).unwrap();
        let kg = kernel_eval(&sh, &ga, &gb).unwrap();
        assert!((k - kg).norm() < 1e-8 * k.norm(), "{k} vs {kg}");
    }
}

#[test]
fn coherent_states_maximize_the_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let sh = shell(1.0, 1);
    let grid = Line::symmetric(40.0, 0.02).unwrap();
    let z = point(&[0.4, -0.3], &[1.0, 0.35]);
    let ez = MomentumWavefunction::coherent(sh, grid, &z).unwrap();
    let g = ez.norm_sq();
    let closed = ez_norm_sq(&sh, z.lambda(1.0).unwrap(), NormMethod::Closed).unwrap();
    assert!((g / closed - 1.0).abs() < 1e-9);
    let at = ez.eval(&z).unwrap();
    assert!((at.re / g - 1.0).abs() < 1e-12 && at.im.abs() < 1e-12 * g);
    for _ in 0..200 {
        let bumps: Vec<(f64, f64, f64, f64)> = (0..3)
            .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-2.0..2.0), rng.random_range(0.3..1.5), rng.random_range(0.0..6.3)))
            .collect();
        let a = MomentumWavefunction::from_fn(sh, grid, |p| {
            bumps.iter().map(|&(c, p0, w, ph)| C64::from_polar(c * (-(p - p0).powi(2) / (2.0 * w * w)).exp(), ph * p)).sum()
        })
        .unwrap();
        let ratio = a.eval(&z).unwrap().norm() / (a.norm_sq() * g).sqrt();
        assert!(ratio <= 1.0 + 1e-12, "{ratio}");
        assert!(ratio < 1.0 - 1e-6);
    }
}

#[test]
fn newton_wigner_position_expectation() {
    let sh = shell(1.0, 1);
    let grid = Line::symmetric(40.0, 0.01).unwrap();
    for (x1, y) in [(0.7, [1.0, 0.3]), (-1.2, [0.6, -0.2])] {
        let z = point(&[0.0, x1], &y);
        let e = MomentumWavefunction::coherent(sh, grid, &z).unwrap();
        let v = e.values();
        let ps = grid.points();
        let n = v.len();
        let mut num = C64::new(0.0, 0.0);
        let mut den = 0.0;
        for i in 1..n - 1 {
            let om = sh.omega(&[ps[i]]);
            let dv = (v[i + 1] - v[i - 1]) / (2.0 * grid.step);
            let xe = C64::i() * (dv - v[i] * ps[i] / (2.0 * om * om));
            num += v[i].conj() * xe / om;
            den += v[i].norm_sqr() / om;
        }
        assert!((num.re / den - x1).abs() < 1e-4, "{} vs {x1}", num.re / den);
    }
}
