use std::f64::consts::PI;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin_cs::*;

fn random_label(rng: &mut ChaCha8Rng) -> SphereLabel {
    let z: f64 = rng.random_range(-1.0..1.0);
    SphereLabel::new(z.acos(), rng.random_range(0.0..2.0 * PI)).unwrap()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

#[test]
fn sphere_vector_matches_wigner_small_d() {
    // component m: (-1)^{s+m} e^{-i m phi} sqrt(C(2s, s+m)) cos(theta/2)^{s-m} sin(theta/2)^{s+m}
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for two_s in [1, 2, 5, 8] {
        let r = SpinRep::from_twice(two_s).unwrap();
        for _ in 0..10 {
            let n = random_label(&mut rng);
            let h = spin_cs_vector(&r, &n);
            let (sh, ch) = (n.theta / 2.0).sin_cos();
            for i in 0..r.dim() {
                let m = r.weight(i);
                let k = two_s - i; // s + m
                let mag = (-1f64).powi(k as i32) * binom(two_s, k).sqrt() * ch.powi(i as i32) * sh.powi(k as i32);
                let want = C64::from_polar(mag, -m * n.phi);
                assert!((h[i] - want).norm() < 1e-12, "2s={two_s} i={i}");
            }
        }
    }
}

#[test]
fn base_point_is_lowest_weight() {
    let r = build_rep(2.0).unwrap();
    let h = spin_cs_vector(&r, &SphereLabel::new(0.0, 0.0).unwrap());
    assert!((h - r.lowest()).norm() < 1e-14);
}

#[test]
fn overlap_law_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in [0.5, 1.0, 2.5, 4.0] {
        let r = build_rep(s).unwrap();
        for _ in 0..100 {
            let (a, b) = (random_label(&mut rng), random_label(&mut rng));
            let ov = spin_cs_vector(&r, &a).dotc(&spin_cs_vector(&r, &b)).norm_sqr();
            let want = ((1.0 + dot(a.unit_vector(), b.unit_vector())) / 2.0).powf(2.0 * s);
            assert!((ov - want).abs() < 1e-10, "s={s}: {ov} vs {want}");
        }
    }
}

#[test]
fn antipodal_states_are_orthogonal() {
    let r = build_rep(1.5).unwrap();
    let a = SphereLabel::new(0.7, 1.1).unwrap();
    let b = SphereLabel::new(PI - 0.7, 1.1 + PI).unwrap();
    assert!(spin_cs_vector(&r, &a).dotc(&spin_cs_vector(&r, &b)).norm() < 1e-12);
}

#[test]
fn sphere_vectors_have_unit_norm_and_spin_minus_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = build_rep(1.5).unwrap();
    for _ in 0..20 {
        let n = random_label(&mut rng);
        let h = spin_cs_vector(&r, &n);
        assert!((h.norm() - 1.0).abs() < 1e-13);
        let u = n.unit_vector();
        let e: Vec<f64> = [r.s1(), r.s2(), r.s3()].iter().map(|m| h.dotc(&(m * &h)).re).collect();
        for k in 0..3 {
            assert!((e[k] + r.spin() * u[k]).abs() < 1e-12);
        }
    }
}

#[test]
fn sphere_labels_from_vectors() {
    let n = SphereLabel::from_vector([0.0, 1.0, 0.0]).unwrap();
    assert!((n.theta - PI / 2.0).abs() < 1e-15 && (n.phi - PI / 2.0).abs() < 1e-15);
    assert!(SphereLabel::from_vector([1.0, 1.0, 0.0]).is_err());
    assert!(SphereLabel::new(4.0, 0.0).is_err());
    assert!(SphereLabel::new(1.0, f64::NAN).is_err());
    let n = SphereLabel::new(1.0, -1.0).unwrap();
    assert!((n.phi - (2.0 * PI - 1.0)).abs() < 1e-15);
}

#[test]
fn sphere_resolution_of_unity() {
    let half = sphere_resolution_check(&build_rep(0.5).unwrap(), 16).unwrap();
    assert!(half.defect < 1e-12, "{half:?}");
    let r = build_rep(2.5).unwrap();
    let big = sphere_resolution_check(&r, 32).unwrap();
    assert!(big.defect < 1e-10, "{big:?}");
    assert!(big.off_diagonal < 1e-10);
    assert!((big.trace_constant * 6.0 - 4.0 * PI).abs() < 1e-10);
}

#[test]
fn sphere_resolution_improves_with_order() {
    let r = build_rep(2.5).unwrap();
    let d: Vec<f64> = [1, 2, 3, 4].iter().map(|&o| sphere_resolution_check(&r, o).unwrap().defect).collect();
    for w in d.windows(2) {
        assert!(w[1] < w[0], "{d:?}");
    }
    // exact once the polynomial degree 2s in cos(theta) is covered
    assert!(sphere_resolution_check(&r, 3).unwrap().defect < 1e-13);
}

#[test]
fn holomorphic_vector_basics() {
    let r = build_rep(2.0).unwrap();
    let h0 = holo_cs_vector(&r, C64::new(0.0, 0.0)).unwrap();
    assert!((h0 - r.lowest()).norm() < 1e-15);
    assert!(holo_cs_vector(&r, C64::new(f64::NAN, 0.0)).is_err());
    assert!(HoloLabel::new(C64::new(0.0, f64::INFINITY)).is_err());
}

#[test]
fn holomorphic_vector_is_the_exponential() {
    let r = build_rep(1.5).unwrap();
    let z = C64::new(0.4, -1.3);
    let direct = (r.s_plus() * -z.conj()).exp() * r.lowest();
    assert!((holo_cs_vector(&r, z).unwrap() - direct).norm() < 1e-12);
}

#[test]
fn holomorphic_norm_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in [0.5, 1.5, 3.0] {
        let r = build_rep(s).unwrap();
        for _ in 0..50 {
            let z = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let n = holo_cs_vector(&r, z).unwrap().norm_squared();
            let want = (1.0 + z.norm_sqr()).powf(2.0 * s);
            assert!((n - want).abs() < 1e-10 * want, "s={s}");
        }
    }
}

#[test]
fn holomorphic_and_sphere_frames_agree_up_to_scale() {
    let r = build_rep(2.5).unwrap();
    let n = SphereLabel::new(1.2, 0.8).unwrap();
    let hz = holo_cs_vector(&r, HoloLabel::from_sphere(&n).unwrap().zeta).unwrap();
    let hn = spin_cs_vector(&r, &n);
    let ov = hn.dotc(&hz).norm();
    assert!((ov - hz.norm()).abs() < 1e-12 * hz.norm());
}

fn lagrange(nodes: &[C64], vals: &[C64], z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (i, (xi, yi)) in nodes.iter().zip(vals).enumerate() {
        let mut l = C64::new(1.0, 0.0);
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                l *= (z - xj) / (xi - xj);
            }
        }
        acc += yi * l;
    }
    acc
}

#[test]
fn transform_is_a_polynomial_of_degree_two_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let r = build_rep(2.0).unwrap();
    let f = DVector::from_fn(r.dim(), |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let ft = |z: C64| holo_cs_vector(&r, z).unwrap().dotc(&f);
    let nodes: Vec<C64> = (0..r.dim()).map(|k| C64::from_polar(0.8, 2.0 * PI * k as f64 / r.dim() as f64)).collect();
    let vals: Vec<C64> = nodes.iter().map(|&z| ft(z)).collect();
    for _ in 0..50 {
        let z = C64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let want = ft(z);
        assert!((lagrange(&nodes, &vals, z) - want).norm() < 1e-9 * (1.0 + want.norm()));
    }
}

#[test]
fn holomorphic_resolution_of_unity() {
    let half = holo_resolution_check(&build_rep(0.5).unwrap(), 96, 8).unwrap();
    assert!(half.defect < 1e-10, "{half:?}");
    let two = holo_resolution_check(&build_rep(2.0).unwrap(), 96, 12).unwrap();
    assert!(two.defect < 1e-8, "{two:?}");
    let r = build_rep(2.5).unwrap();
    let rep = holo_resolution_check(&r, 128, 12).unwrap();
    assert!(rep.defect < 1e-10, "{rep:?}");
    assert!((rep.trace_constant * 6.0 - 4.0 * PI * 2.5).abs() < 1e-9);
}

#[test]
fn holomorphic_resolution_improves_with_order() {
    let r = build_rep(1.5).unwrap();
    let d: Vec<f64> = [8, 16, 32, 64].iter().map(|&o| holo_resolution_check(&r, o, 8).unwrap().defect).collect();
    for w in d.windows(2) {
        assert!(w[1] < w[0], "{d:?}");
    }
}

#[test]
fn expectations_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for s in [0.5, 1.0, 3.5] {
        let r = build_rep(s).unwrap();
        for _ in 0..30 {
            let z = C64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let e = spin_expectations(&r, z).unwrap();
            let w = spin_expectations_closed(s, z);
            assert!((e.s_plus - w.s_plus).norm() < 1e-10);
            assert!((e.s3 - w.s3).abs() < 1e-10);
            assert!((e.s_sq - s * s).abs() < 1e-10);
            // stereographic projection
            assert!((e.s_plus / (s - e.s3) + z).norm() < 1e-9 * (1.0 + z.norm()));
        }
    }
}

#[test]
fn south_pole_and_equator() {
    let r = build_rep(1.5).unwrap();
    assert!((spin_expectations(&r, C64::new(0.0, 0.0)).unwrap().s3 + 1.5).abs() < 1e-15);
    for k in 0..8 {
        let z = C64::cis(k as f64 * 0.7);
        assert!(spin_expectations(&r, z).unwrap().s3.abs() < 1e-12);
    }
}
