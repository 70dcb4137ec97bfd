use std::f64::consts::PI;

use analytic_signal::*;
use quadrature::adaptive;

fn periodic(n: usize, f: impl Fn(f64) -> f64) -> FieldSample {
    FieldSample::from_fn(vec![n], vec![0.0], vec![1.0 / n as f64], |x| C64::new(f(x[0]), 0.0)).unwrap()
}

fn gauss1(h: f64, half: f64) -> FieldSample {
    let n = (2.0 * half / h).round() as usize + 1;
    FieldSample::from_fn(vec![n], vec![-half], vec![h], |x| {
        C64::new((-x[0] * x[0]).exp() * (1.0 + 0.4 * x[0]), 0.0)
    })
    .unwrap()
}

fn gauss2(h: f64, half: f64) -> FieldSample {
    let n = (2.0 * half / h).round() as usize + 1;
    FieldSample::from_fn(vec![n, n], vec![-half, -half], vec![h, h], |x| {
        C64::new((-(x[0] * x[0] + 0.5 * x[1] * x[1])).exp() * (1.0 + 0.3 * x[0]), 0.0)
    })
    .unwrap()
}

#[test]
fn cosine_continues_to_half_exponential() {
    let nu = 3.0;
    let a = 2.0 * PI * nu;
    let f = periodic(64, |t| (a * t).cos());
    for (x, y) in [(0.1, 0.2), (0.37, 0.05), (0.8, -0.3), (0.25, -0.01)] {
        let z = C64::new(x, -y);
        let got = analytic_signal_1d(&f, z).unwrap();
        let sign = if y > 0.0 { -1.0 } else { 1.0 };
        let want = (C64::new(0.0, sign * a) * z).exp() * 0.5;
        assert!((got - want).norm() < 1e-8, "{got} vs {want}");
    }
}

#[test]
fn real_axis_gives_half_the_signal() {
    let f = gauss1(0.05, 6.0);
    let fa = FourierAst::new(&f);
    for i in [40usize, 120, 121, 200] {
        let x = f.point(i);
        let got = fa.eval(&x, &[0.0]).unwrap();
        assert!((got - f.values()[i] * 0.5).norm() < 1e-12);
        let line = ast_line(&f, &x, &[0.0]).unwrap();
        assert!((line - f.values()[i] * 0.5).norm() < 1e-15);
    }
}

#[test]
fn reflection_conjugates_for_real_fields() {
    let f = gauss2(0.1, 6.0);
    let fa = FourierAst::new(&f);
    let x = [0.3, -0.4];
    let y = [0.2, 0.5];
    let up = fa.eval(&x, &y).unwrap();
    let down = fa.eval(&x, &[-0.2, -0.5]).unwrap();
    assert!((up - down.conj()).norm() < 1e-12);
}

#[test]
fn boundary_values_recover_the_signal_at_first_order() {
    let f = gauss1(0.02, 7.0);
    let fa = FourierAst::padded(&f, 4).unwrap();
    let x = 0.3;
    let exact = (-x * x as f64).exp() * (1.0 + 0.4 * x);
    let mut errs = Vec::new();
    for eps in [0.04, 0.02, 0.01, 0.005] {
        let s = fa.eval(&[x], &[eps]).unwrap() + fa.eval(&[x], &[-eps]).unwrap();
        errs.push((s.re - exact).abs());
    }
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 1.6 && ratio < 2.5, "ratio {ratio} in {errs:?}");
    }
}

#[test]
fn fourier_and_line_agree_in_one_dimension() {
    let f = gauss1(0.02, 7.0);
    let fa = FourierAst::padded(&f, 32).unwrap();
    for (x, y) in [(0.0, 0.3), (0.7, -0.5), (-1.2, 1.5), (2.0, 0.05)] {
        let a = fa.eval(&[x], &[y]).unwrap();
        let b = ast_line(&f, &[x], &[y]).unwrap();
        assert!((a - b).norm() < 1e-4, "x={x} y={y}: {a} vs {b}");
    }
}

#[test]
fn fourier_and_line_agree_in_two_dimensions() {
    let f = gauss2(0.1, 6.0);
    let fa = FourierAst::padded(&f, 8).unwrap();
    for (x, y) in [([0.3, -0.2], [0.5, 0.2]), ([1.0, 0.5], [-0.3, 0.7]), ([0.0, 0.0], [0.1, 0.0])] {
        let a = fa.eval(&x, &y).unwrap();
        let b = ast_line(&f, &x, &y).unwrap();
        assert!((a - b).norm() < 1e-4, "{x:?} {y:?}: {a} vs {b}");
    }
}

#[test]
fn ast_eval_dispatches() {
    let f = gauss1(0.05, 6.0);
    let a = ast_eval(&f, &[0.2], &[0.4], AstMethod::Fourier).unwrap();
    assert_eq!(a, FourierAst::new(&f).eval(&[0.2], &[0.4]).unwrap());
    let b = ast_eval(&f, &[0.2], &[0.4], AstMethod::Line).unwrap();
    assert_eq!(b, ast_line(&f, &[0.2], &[0.4]).unwrap());
    assert!(matches!(ast_eval(&f, &[0.2, 0.1], &[0.4], AstMethod::Line), Err(AstError::Dimension(_))));
}

#[test]
fn line_method_rejects_undecayed_fields() {
    let f = gauss1(0.05, 2.0);
    let err = ast_line(&f, &[0.0], &[1.0]).unwrap_err();
    assert!(matches!(err, AstError::InsufficientDecay { .. }), "{err:?}");
}

#[test]
fn hilbert_of_cosine_is_sine() {
    let nu = 2.0;
    let f = periodic(64, |t| (2.0 * PI * nu * t).cos());
    let fa = FourierAst::new(&f);
    for x in [0.1, 0.33, 0.71] {
        let h = directional_hilbert(|x: &[f64], y: &[f64]| fa.eval(x, y), &[x], &[1.0], 0.01, 1e-5).unwrap();
        let want = (2.0 * PI * nu * x).sin();
        assert!((h.value - want).norm() < 1e-4, "{} vs {want}", h.value);
    }
}

/// `2 int_0^inf sin(2 pi x p) e^{-pi p^2} dp`, the Hilbert transform of `e^{-pi t^2}`.
fn gaussian_hilbert(x: f64) -> f64 {
    let r = adaptive(
        |p: f64| C64::new((2.0 * PI * x * p).sin() * (-PI * p * p).exp(), 0.0),
        0.0,
        8.0,
        1e-13,
        1e-12,
        4000,
    )
    .unwrap();
    2.0 * r.value.re
}

#[test]
fn hilbert_of_gaussian_matches_quadrature() {
    let f = FieldSample::from_fn(vec![1024], vec![-8.0], vec![1.0 / 64.0], |x| C64::new((-PI * x[0] * x[0]).exp(), 0.0)).unwrap();
    let fa = FourierAst::padded(&f, 16).unwrap();
    for x in [0.0, 0.25, 0.6, 1.3] {
        let h = directional_hilbert(|x: &[f64], y: &[f64]| fa.eval(x, y), &[x], &[1.0], 0.02, 1e-6).unwrap();
        let want = gaussian_hilbert(x);
        assert!((h.value.re - want).abs() < 1e-4, "x={x}: {} vs {want}", h.value);
        assert!(h.value.im.abs() < 1e-10);
    }
}

#[test]
fn hilbert_flips_with_direction() {
    let f = gauss2(0.1, 6.0);
    let fa = FourierAst::padded(&f, 2).unwrap();
    let ast = |x: &[f64], y: &[f64]| fa.eval(x, y);
    let x = [0.2, -0.3];
    let a = directional_hilbert(ast, &x, &[0.6, 0.8], 0.05, 1e-3).unwrap();
    let b = directional_hilbert(ast, &x, &[-0.6, -0.8], 0.05, 1e-3).unwrap();
    assert!((a.value + b.value).norm() < 1e-10);
    assert!(a.value.im.abs() < 1e-10);
}

#[test]
fn hilbert_reports_non_convergence() {
    let wild = |_: &[f64], y: &[f64]| Ok(C64::new((1.0 / y[0]).sin(), 0.0));
    let err = directional_hilbert(wild, &[0.0], &[1.0], 0.01, 1e-8).unwrap_err();
    assert!(matches!(err, AstError::NonConvergent { .. }));
    let zero = |_: &[f64], _: &[f64]| Ok(C64::new(0.0, 0.0));
    assert_eq!(directional_hilbert(zero, &[0.0], &[0.0], 0.1, 1e-8).unwrap_err(), AstError::ZeroDirection);
    assert!(matches!(directional_hilbert(zero, &[0.0], &[1.0], 0.0, 1e-8), Err(AstError::Invalid(_))));
}

#[test]
fn one_dimensional_ast_is_holomorphic() {
    let f = gauss1(0.02, 7.0);
    let fa = FourierAst::new(&f);
    for (x, y) in [(0.2, 0.3), (-0.5, -0.4)] {
        let r = dbar_defect(|x: &[f64], y: &[f64]| fa.eval(x, y), &[x], &[y], 1e-3).unwrap();
        assert!(r.components[0].norm() < 1e-5, "{:?}", r.components);
        assert!(r.directional < 1e-5);
    }
}

#[test]
fn two_dimensional_ast_is_holomorphic_along_y_only() {
    let f = gauss2(0.05, 6.0);
    let r = dbar_defect(|x: &[f64], y: &[f64]| ast_line(&f, x, y), &[0.3, 0.5], &[1.0, 0.0], 1e-3).unwrap();
    assert!(r.directional < 1e-4, "{}", r.directional);
    let biggest = r.components.iter().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(biggest > 1e-2, "{:?}", r.components);
}

#[test]
fn constant_has_no_defect() {
    let r = dbar_defect(|_: &[f64], _: &[f64]| Ok(C64::new(0.5, 0.0)), &[0.1, 0.2], &[0.3, 0.4], 1e-3).unwrap();
    assert!(r.components.iter().all(|c| c.norm() == 0.0));
    assert_eq!(r.directional, 0.0);
}

#[test]
fn pseudo_exponential_identity() {
    let res = [-1.5, -0.2, 0.0, 0.3, 2.0];
    let ims = [-1.0, 0.0, 0.7];
    for &a in &res {
        for &b in &ims {
            for &c in &res {
                for &d in &ims {
                    let z = C64::new(a, b);
                    let w = C64::new(c, d);
                    let lhs = pseudo_exp(z) * pseudo_exp(w);
                    let rhs = pseudo_exp(z + w) * theta(a * c);
                    assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()), "{z} {w}");
                }
            }
        }
    }
}

#[test]
fn theta_is_half_at_zero() {
    assert_eq!(theta(0.0), 0.5);
    assert_eq!(theta(1e-300), 1.0);
    assert_eq!(theta(-3.0), 0.0);
}

#[test]
fn field_errors() {
    assert!(FieldSample::new(vec![2, 2], vec![0.0], vec![1.0, 1.0], vec![C64::new(0.0, 0.0); 4]).is_err());
    assert!(FieldSample::new(vec![3], vec![0.0], vec![1.0], vec![C64::new(0.0, 0.0); 4]).is_err());
    assert!(FieldSample::new(vec![2], vec![0.0], vec![-1.0], vec![C64::new(0.0, 0.0); 2]).is_err());
    assert!(FieldSample::new(vec![1, 1, 1, 1], vec![0.0; 4], vec![1.0; 4], vec![C64::new(0.0, 0.0)]).is_err());
    let f = gauss1(0.1, 3.0);
    assert!(matches!(analytic_signal_1d(&gauss2(0.5, 2.0), C64::new(0.0, 0.0)), Err(AstError::Dimension(_))));
    assert!(matches!(FourierAst::padded(&f, 0), Err(AstError::Invalid(_))));
}

#[test]
fn spectrum_round_trip() {
    let f = gauss2(0.2, 3.0);
    let back = inverse_spectrum(&FieldSpectrum::of(&f), &f);
    assert!(back.relative_l2_distance(&f) < 1e-13);
}

#[test]
fn cubic_interpolation_reproduces_quadratics() {
    let f = FieldSample::from_fn(vec![9, 9], vec![0.0, 0.0], vec![0.5, 0.5], |x| {
        C64::new(x[0] * x[0] - 2.0 * x[0] * x[1] + 0.5 * x[1], 0.0)
    })
    .unwrap();
    let p = [1.37, 2.11];
    let want = p[0] * p[0] - 2.0 * p[0] * p[1] + 0.5 * p[1];
    assert!((f.interpolate_cubic(&p).re - want).abs() < 1e-12);
    assert_eq!(f.interpolate_cubic(&[10.0, 1.0]), C64::new(0.0, 0.0));
}
