use std::f64::consts::PI;

use coherent_states::*;

fn line(half: f64, dx: f64) -> TimeGrid {
    TimeGrid { t0: -half, dt: dx, n: (2.0 * half / dx).round() as usize + 1 }
}

fn hermite_state(n: usize, grid: TimeGrid) -> SampledSignal {
    SampledSignal::from_fn(grid, |x| C64::new(hermite_function(n, x), 0.0)).unwrap()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[test]
fn hermite_functions_match_explicit_polynomials() {
    let polys: [fn(f64) -> f64; 5] = [
        |_| 1.0,
        |x| 2.0 * x,
        |x| 4.0 * x * x - 2.0,
        |x| 8.0 * x.powi(3) - 12.0 * x,
        |x| 16.0 * x.powi(4) - 48.0 * x * x + 12.0,
    ];
    for (n, h) in polys.iter().enumerate() {
        let norm = (2f64.powi(n as i32) * factorial(n) * PI.sqrt()).powf(-0.5);
        for x in [-2.3, -0.4, 0.0, 0.9, 3.1] {
            let want = norm * h(x) * (-x * x / 2.0).exp();
            assert!((hermite_function(n, x) - want).abs() < 1e-13);
        }
    }
}

#[test]
fn ground_state_is_normalized() {
    let chi = CanonicalCS::new(0.0, 0.0).sample(line(12.0, 0.05)).unwrap();
    assert!((inner(&chi, &chi).unwrap().re - 1.0).abs() < 1e-10);
}

#[test]
fn norm_grows_with_the_label() {
    let grid = line(14.0, 0.05);
    for (x, p) in [(1.0, 0.5), (-0.7, 2.0)] {
        let cs = CanonicalCS::new(x, p);
        let chi = cs.sample(grid).unwrap();
        let n = inner(&chi, &chi).unwrap().re;
        assert!((n / cs.norm_sqr() - 1.0).abs() < 1e-10);
        assert!((cs.norm_sqr() - ((x * x + p * p) / 2.0).exp()).abs() < 1e-14);
    }
}

#[test]
fn expectations_follow_the_label() {
    let grid = line(12.0, 0.05);
    for (x, p) in [(0.0, 0.0), (1.3, -0.8), (-2.0, 2.5)] {
        let m = position_space_moments(&CanonicalCS::new(x, p).sample(grid).unwrap()).unwrap();
        assert!((m.mean_x - x).abs() < 1e-10, "{m:?}");
        assert!((m.mean_p - p).abs() < 1e-10, "{m:?}");
        assert!((m.delta_x - 0.5f64.sqrt()).abs() < 1e-9);
        assert!((m.uncertainty_product() - 0.5).abs() < 1e-8);
    }
}

#[test]
fn overlaps_are_gaussian() {
    let grid = line(14.0, 0.05);
    let labels = [C64::new(0.3, -0.5), C64::new(-1.0, 0.7), C64::new(2.0, 1.5)];
    let states: Vec<SampledSignal> = labels.iter().map(|&z| CanonicalCS::from_label(z).sample(grid).unwrap()).collect();
    for (i, z) in labels.iter().enumerate() {
        for (j, w) in labels.iter().enumerate() {
            let got = inner(&states[i], &states[j]).unwrap();
            let want = (z * w.conj() / 2.0).exp();
            assert!((got - want).norm() < 1e-8 * want.norm(), "{got} vs {want}");
            // normalized overlap
            let nz = got / (CanonicalCS::from_label(*z).norm_sqr() * CanonicalCS::from_label(*w).norm_sqr()).sqrt();
            let closed = (-z.norm_sqr() / 4.0 - w.norm_sqr() / 4.0 + z * w.conj() / 2.0).exp();
            assert!((nz - closed).norm() < 1e-8);
        }
    }
}

#[test]
fn bargmann_transform_of_hermite_functions() {
    let grid = line(12.0, 0.05);
    let zs = [C64::new(0.0, 0.0), C64::new(0.7, -0.2), C64::new(-1.5, 2.0), C64::new(2.5, 0.5)];
    for n in 0..5 {
        let got = bargmann_transform(&hermite_state(n, grid), &zs);
        for (g, z) in got.iter().zip(&zs) {
            let want = (z / 2f64.sqrt()).powu(n as u32) / factorial(n).sqrt();
            assert!((g - want).norm() < 1e-10, "n={n} z={z}: {g} vs {want}");
        }
    }
}

#[test]
fn bargmann_of_zero_is_zero() {
    let f = SampledSignal::zeros(line(5.0, 0.1)).unwrap();
    assert!(bargmann_transform(&f, &[C64::new(1.0, 1.0)]).iter().all(|v| v.norm() == 0.0));
}

#[test]
fn bargmann_norm_is_isometric() {
    let grid = line(12.0, 0.05);
    let labels = LabelGrid::disk(10.0, 81).unwrap();
    for f in [
        hermite_state(2, grid),
        SampledSignal::from_fn(grid, |x| C64::new((-(x - 1.0).powi(2)).exp(), 0.3 * x * (-x * x).exp())).unwrap(),
    ] {
        let n = inner(&f, &f).unwrap().re;
        let b = bargmann_norm(&bargmann_transform(&f, &labels.points), &labels).unwrap();
        assert!((b - n).abs() < 1e-4 * n, "{b} vs {n}");
    }
}

#[test]
fn resolution_of_unity_on_hermite_functions() {
    let grid = line(12.0, 0.05);
    let labels = LabelGrid::square(10.0, 81).unwrap();
    let tests: Vec<SampledSignal> = (0..5).map(|n| hermite_state(n, grid)).collect();
    assert!(canonical_resolution_check(&labels, &tests).unwrap() < 1e-6);
    let ground = [CanonicalCS::new(0.0, 0.0).sample(grid).unwrap()];
    assert!(canonical_resolution_check(&labels, &ground).unwrap() < 1e-8);
}

#[test]
fn empty_label_grid_leaves_the_inner_products() {
    let grid = line(10.0, 0.05);
    let tests = [hermite_state(0, grid), hermite_state(1, grid)];
    let d = canonical_resolution_check(&LabelGrid::empty(), &tests).unwrap();
    assert!((d - 1.0).abs() < 1e-10);
}

#[test]
fn reconstruction_round_trips() {
    let grid = line(12.0, 0.05);
    let labels = LabelGrid::square(10.0, 81).unwrap();
    let out = line(6.0, 0.1);
    for n in [0, 3] {
        let f = hermite_state(n, grid);
        let back = bargmann_reconstruct(&bargmann_transform(&f, &labels.points), &labels, out).unwrap();
        let want = hermite_state(n, out);
        assert!(back.relative_l2_distance(&want) < 1e-5);
    }
}

#[test]
fn dbar_defect_is_second_order() {
    let f = SampledSignal::from_fn(line(12.0, 0.05), |x| C64::new((-(x - 0.5).powi(2)).exp() * (1.0 + x), 0.0)).unwrap();
    let z = C64::new(0.4, -0.9);
    let d: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|&h| bargmann_dbar(&f, z, h)).collect();
    for w in d.windows(2) {
        let r = w[0] / w[1];
        assert!(r > 3.5 && r < 4.5, "{d:?}");
    }
}

#[test]
fn label_grid_errors() {
    assert!(LabelGrid::square(1.0, 1).is_err());
    assert!(LabelGrid::rectangle((1.0, 0.0), (0.0, 1.0), 3, 3).is_err());
    let a = SampledSignal::zeros(line(1.0, 0.1)).unwrap();
    let b = SampledSignal::zeros(line(2.0, 0.1)).unwrap();
    assert!(inner(&a, &b).is_err());
    assert!(bargmann_norm(&[C64::new(1.0, 0.0)], &LabelGrid::empty()).is_err());
    assert_eq!(position_space_moments(&a).unwrap_err(), CsError::ZeroNorm);
}
