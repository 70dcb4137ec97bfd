use std::f64::consts::PI;

use relativistic_cs::*;

fn shell() -> MassShell {
    MassShell::new(1.0, 1).unwrap()
}

fn gaussian(p0: f64, w: f64) -> impl Fn(f64) -> C64 {
    move |p| C64::new((-(p - p0).powi(2) / (2.0 * w * w)).exp(), 0.0)
}

fn packet() -> MomentumWavefunction {
    MomentumWavefunction::from_fn(shell(), Line::symmetric(6.0, 0.02).unwrap(), gaussian(0.3, 0.5)).unwrap()
}

/// `int dp~ |a|^2` by adaptive quadrature on the analytic profile.
fn norm_oracle(p0: f64, w: f64) -> f64 {
    let a = gaussian(p0, w);
    quadrature::adaptive_real(|p| a(p).norm_sqr() / (4.0 * PI * (1.0 + p * p).sqrt()), -12.0, 12.0, 0.0, 1e-13, 2000).unwrap()
}

fn grid() -> PhaseGrid {
    PhaseGrid { x: Line::symmetric(15.0, 0.1).unwrap(), y: Line::symmetric(30.0, 0.1).unwrap() }
}

#[test]
fn phase_space_norm_equals_the_momentum_norm() {
    let f = packet();
    let want = norm_oracle(0.3, 0.5);
    assert!((f.norm_sq() / want - 1.0).abs() < 1e-10);
    let n = phase_space_norm(&f, 1.0, 0.0, &grid()).unwrap();
    assert!(n.tail < TAIL_TOL);
    assert!((n.value / want - 1.0).abs() < 1e-3, "{} vs {want}", n.value);
}

#[test]
fn phase_space_norm_is_time_independent() {
    let f = packet();
    let a = phase_space_norm(&f, 0.7, 0.0, &grid()).unwrap().value;
    let b = phase_space_norm(&f, 0.7, 0.7, &grid()).unwrap().value;
    assert!((a / b - 1.0).abs() < 1e-3);
}

#[test]
fn zero_state_has_zero_norm() {
    let f = MomentumWavefunction::new(shell(), Line::symmetric(2.0, 0.1).unwrap(), vec![C64::new(0.0, 0.0); 41]).unwrap();
    let g = PhaseGrid { x: Line::symmetric(2.0, 0.5).unwrap(), y: Line::symmetric(2.0, 0.5).unwrap() };
    assert_eq!(phase_space_norm(&f, 1.0, 0.0, &g).unwrap().value, 0.0);
}

#[test]
fn truncated_grids_are_reported() {
    let small = PhaseGrid { x: Line::symmetric(2.0, 0.1).unwrap(), y: Line::symmetric(30.0, 0.1).unwrap() };
    assert!(matches!(phase_space_norm(&packet(), 1.0, 0.0, &small), Err(RelError::Truncation { .. })));
    assert!(phase_space_norm(&packet(), 0.0, 0.0, &grid()).is_err());
}

#[test]
fn sampled_wave_functions_need_one_dimension() {
    let three = MassShell::new(1.0, 3).unwrap();
    let line = Line::symmetric(1.0, 0.5).unwrap();
    assert!(matches!(MomentumWavefunction::new(three, line, vec![C64::new(1.0, 0.0); 5]), Err(RelError::Unsupported(_))));
    assert!(matches!(MomentumWavefunction::new(shell(), line, vec![C64::new(1.0, 0.0); 4]), Err(RelError::Length { .. })));
    assert!(Line::new(0.0, 0.0, 4).is_err());
}

#[test]
fn current_is_positive_and_conserved() {
    let f = packet();
    let g = PhaseGrid { x: Line::symmetric(15.0, 0.02).unwrap(), y: Line::symmetric(30.0, 0.1).unwrap() };
    let r = current_density(&f, 1.0, 0.3, &g, 0.01).unwrap();
    assert!(r.j0.iter().all(|v| *v >= 0.0));
    assert!(r.j0.iter().zip(&r.j1).all(|(a, b)| b.abs() <= *a));
    assert!(r.defect < 1e-3, "{}", r.defect);
    let want = norm_oracle(0.3, 0.5);
    assert!((r.flux / want - 1.0).abs() < 1e-3, "{} vs {want}", r.flux);
}

#[test]
fn current_divergence_shrinks_with_the_step() {
    let f = packet();
    let defect = |dx: f64| {
        let g = PhaseGrid { x: Line::symmetric(15.0, dx).unwrap(), y: Line::symmetric(30.0, 0.1).unwrap() };
        current_density(&f, 1.0, 0.3, &g, dx).unwrap().defect
    };
    let (a, b) = (defect(0.2), defect(0.1));
    assert!(a / b > 3.0, "{a} {b}");
}

fn nr_input() -> (Line, Vec<C64>) {
    let p = Line::symmetric(8.0, 0.02).unwrap();
    let v = p.points().into_iter().map(gaussian(0.4, 0.7)).collect();
    (p, v)
}

fn nr_grid() -> PhaseGrid {
    PhaseGrid { x: Line::symmetric(18.0, 0.1).unwrap(), y: Line::symmetric(14.0, 0.05).unwrap() }
}

/// `(2 pi)^{-1} int dy int dp |D(p, y)|^2 |f^(p)|^2` from Plancherel in `x`.
fn nr_oracle(c: f64, t: f64) -> f64 {
    let f = gaussian(0.4, 0.7);
    let inner = |y: f64| {
        quadrature::adaptive_real(
            |p| {
                let om = (c * c + p * p).sqrt();
                let y0 = (c * c + y * y).sqrt();
                let rel = C64::new((c / om).ln() + c * c - y0 * om + y * p, -t * c * (om - c)).exp();
                let nr = C64::new(-p * p / 2.0 - y * y / 2.0 + y * p, -t * p * p / 2.0).exp();
                (rel - nr).norm_sqr() * f(p).norm_sqr()
            },
            -10.0,
            10.0,
            1e-18,
            1e-10,
            2000,
        )
        .unwrap()
    };
    quadrature::adaptive_real(inner, -14.0, 14.0, 1e-16, 1e-9, 2000).unwrap() / (2.0 * PI)
}

#[test]
fn nonrelativistic_defect_decreases() {
    let (p, v) = nr_input();
    let cs = [2.0, 4.0, 8.0, 16.0];
    let j = nonrel_limit_defect(p, &v, 1.0, 1.0, 0.0, &cs, &nr_grid()).unwrap();
    for w in j.windows(2) {
        assert!(w[1] < w[0], "{j:?}");
    }
    for (c, d) in cs.iter().zip(&j) {
        let want = nr_oracle(*c, 0.0);
        assert!((d / want - 1.0).abs() < 1e-6, "c={c}: {d} vs {want}");
    }
    let n = cs.len();
    let slope = (j[n - 1] / j[n - 2]).ln() / (cs[n - 1] / cs[n - 2]).ln();
    eprintln!("nonrelativistic defect {j:?}, final log-log slope {slope:.3}");
}

#[test]
fn nonrelativistic_defect_with_time_evolution() {
    let (p, v) = nr_input();
    let j = nonrel_limit_defect(p, &v, 1.0, 1.0, 0.5, &[3.0, 6.0], &nr_grid()).unwrap();
    for (c, d) in [3.0, 6.0].iter().zip(&j) {
        let want = nr_oracle(*c, 0.5);
        assert!((d / want - 1.0).abs() < 1e-6, "c={c}: {d} vs {want}");
    }
}

#[test]
fn nonrelativistic_defect_of_zero_is_zero() {
    let p = Line::symmetric(4.0, 0.1).unwrap();
    let j = nonrel_limit_defect(p, &vec![C64::new(0.0, 0.0); p.n], 1.0, 1.0, 0.0, &[2.0, 4.0], &nr_grid()).unwrap();
    assert_eq!(j, vec![0.0, 0.0]);
}

#[test]
fn nonrelativistic_defect_errors() {
    let (p, v) = nr_input();
    assert!(nonrel_limit_defect(p, &v, 0.0, 1.0, 0.0, &[2.0], &nr_grid()).is_err());
    assert!(nonrel_limit_defect(p, &v, 1.0, 1.0, 0.0, &[-2.0], &nr_grid()).is_err());
    assert!(nonrel_limit_defect(p, &v[1..], 1.0, 1.0, 0.0, &[2.0], &nr_grid()).is_err());
    let tight = PhaseGrid { x: Line::symmetric(18.0, 0.1).unwrap(), y: Line::symmetric(2.0, 0.05).unwrap() };
    assert!(matches!(nonrel_limit_defect(p, &v, 1.0, 1.0, 0.0, &[2.0], &tight), Err(RelError::Truncation { .. })));
}
