//! Verification suites run by `framelab verify`.
//!
//! Every suite is deterministic given the seed: random draws come from one
//! ChaCha8 generator per suite (same seed, stream = suite index).

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, Relation, Report};
use crate::{CliError, RunConfig};

type C64 = num_complex::Complex64;
type Measured = Result<f64, String>;

pub const SUITES: &[&str] = &["frames", "wft", "wavelet", "relcs", "spincs", "ast", "coherent"];

struct Ctx<'a> {
    suite: &'static str,
    cfg: &'a RunConfig,
    rng: ChaCha8Rng,
    checks: Vec<Check>,
    ids: &'a mut BTreeSet<String>,
}

impl Ctx<'_> {
    fn record(&mut self, id: &str, criterion: u8, relation: Relation, default: f64, m: Measured) -> Result<(), CliError> {
        let key = format!("{}.{id}", self.suite);
        let limit = self.cfg.tolerance(&key)?.unwrap_or(default);
        let value = m.unwrap_or_else(|e| {
            eprintln!("{key}: {e}");
            f64::NAN
        });
        self.ids.insert(key);
        self.checks.push(Check { suite: self.suite.into(), id: id.into(), criterion, value, relation, limit });
        Ok(())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs one suite, or all of them for `"all"`.
pub fn run_verify(cfg: &RunConfig, suite: &str) -> Result<Report, CliError> {
    let names: Vec<&'static str> = match suite {
        "all" => SUITES.to_vec(),
        s => vec![*SUITES.iter().find(|n| **n == s).ok_or_else(|| {
            CliError::Usage(format!("unknown suite `{s}` (known: all, {})", SUITES.join(", ")))
        })?],
    };
    cfg.params.expect_keys(&[])?;
    let mut ids = BTreeSet::new();
    let mut checks = Vec::new();
    for name in names {
        let idx = SUITES.iter().position(|n| *n == name).expect("listed suite") as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(idx);
        let mut cx = Ctx { suite: name, cfg, rng, checks: Vec::new(), ids: &mut ids };
        let start = Instant::now();
        match name {
            "frames" => frames(&mut cx)?,
            "wft" => wft(&mut cx)?,
            "wavelet" => wavelet_suite(&mut cx)?,
            "relcs" => relcs(&mut cx)?,
            "spincs" => spincs(&mut cx)?,
            "ast" => ast(&mut cx)?,
            "coherent" => coherent(&mut cx)?,
            _ => unreachable!("suite list"),
        }
        // timings go to stderr so reports stay byte-reproducible
        eprintln!("suite {name}: {:.2} s", start.elapsed().as_secs_f64());
        checks.append(&mut cx.checks);
    }
    for k in cfg.tol.keys() {
        if !ids.contains(k) {
            return Err(CliError::Usage(format!("unknown tolerance key `{k}`")));
        }
    }
    let mut header = cfg.header();
    header.push(format!("suite: {suite}"));
    Ok(Report { header, checks })
}

// ---------------------------------------------------------------- frames

fn random_frame(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Result<frame_core::FrameSystem, String> {
    let vectors = (0..m)
        .map(|_| (0..d).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect())
        .collect();
    let weights = (0..m).map(|_| 0.5 + rng.random::<f64>()).collect();
    frame_core::FrameSystem::new(vectors, weights).map_err(err)
}

fn max_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn frames(cx: &mut Ctx) -> Result<(), CliError> {
    use frame_core::*;
    let mut neumann = Ok(0.0f64);
    let mut dual = Ok(0.0f64);
    for _ in 0..50 {
        let d = cx.rng.random_range(2..=32usize);
        let m = cx.rng.random_range(3 * d..=128);
        let r = (|| -> Result<(f64, f64), String> {
            let f = random_frame(&mut cx.rng, d, m)?;
            let n = neumann_inverse(&f, NEUMANN_TOL, NEUMANN_MAX_TERMS).map_err(err)?;
            let direct = f.metric().clone().lu().try_inverse().ok_or("singular metric")?;
            let e1 = (&n.ginv - &direct).norm() / direct.norm();
            let rec = reciprocal_frame(&f).map_err(err)?;
            let mut left = DMatrix::<C64>::zeros(d, d);
            let mut right = DMatrix::<C64>::zeros(d, d);
            for ((h, hr), &w) in f.vectors().iter().zip(rec.vectors()).zip(f.weights()) {
                left += hr * h.adjoint() * C64::new(w, 0.0);
                right += h * hr.adjoint() * C64::new(w, 0.0);
            }
            let id = DMatrix::<C64>::identity(d, d);
            Ok((e1, max_entry(&(left - &id)).max(max_entry(&(right - &id)))))
        })();
        match r {
            Ok((a, b)) => {
                neumann = neumann.map(|v| v.max(a));
                dual = dual.map(|v| v.max(b));
            }
            Err(e) => {
                neumann = Err(e.clone());
                dual = Err(e);
            }
        }
    }
    cx.record("neumann_vs_direct", 1, Relation::Below, 1e-8, neumann)?;
    cx.record("dual_resolutions", 1, Relation::Below, 1e-10, dual)?;

    // harmonic frames: G = M I
    let tight = (|| -> Result<(f64, f64), String> {
        let mut terms = 0usize;
        let mut gap = 0.0f64;
        for (d, m) in [(2usize, 3usize), (4, 7), (8, 16), (16, 40), (32, 128)] {
            let vectors = (0..m)
                .map(|k| (0..d).map(|j| C64::from_polar(1.0, 2.0 * PI * (j * k) as f64 / m as f64)).collect())
                .collect();
            let f = FrameSystem::unweighted(vectors).map_err(err)?;
            let (a, _) = frame_bounds(&f).map_err(err)?;
            let n = neumann_inverse(&f, NEUMANN_TOL, NEUMANN_MAX_TERMS).map_err(err)?;
            terms = terms.max(n.terms_used);
            let want = DMatrix::<C64>::identity(d, d) * C64::new(1.0 / a, 0.0);
            gap = gap.max(max_entry(&(n.ginv - want)) * a);
        }
        Ok((terms as f64, gap))
    })();
    cx.record("tight_terms", 1, Relation::AtMost, 1.0, tight.clone().map(|t| t.0))?;
    cx.record("tight_collapse", 1, Relation::Below, 1e-12, tight.map(|t| t.1))
}

// ---------------------------------------------------------------- wft

fn wft(cx: &mut Ctx) -> Result<(), CliError> {
    use windowed_fourier::*;
    let dt = 1.0 / 32.0;
    let tau = 1.0;
    let run = (|| -> Result<(f64, f64), String> {
        let h = WindowSpec::smooth_bump(dt, tau).map_err(err)?;
        let f = SampledSignal::from_fn(TimeGrid { t0: -20.0, dt, n: 1280 }, |t| {
            let env = (-(t / 6.0).powi(2)).exp();
            env * (C64::from_polar(1.0, 2.0 * PI * 0.37 * t)
                + C64::from_polar(0.5, -2.0 * PI * 1.13 * t + 0.4)
                + C64::new(0.25 * (2.0 * PI * 0.05 * t).cos(), 0.0))
        })
        .map_err(err)?;
        let lat = WftLattice::covering(&f, &h, tau / 2.0).map_err(err)?;
        if (lat.f_step - 1.0 / tau).abs() > 1e-12 {
            return Err(format!("frequency step {} != 1/tau", lat.f_step));
        }
        let coeffs = wft_lattice_analyze(&f, &h, &lat).map_err(err)?;
        let w = lattice_weight(&h, lat.t_step, &f.grid()).map_err(err)?;
        let rhs = weighted_energy(&f, &w);
        let frame_sum = ((coeffs.energy() - rhs) / rhs).abs();
        let back = wft_reconstruct(&coeffs, &h, &f.grid()).map_err(err)?;
        Ok((frame_sum, back.relative_l2_distance(&f)))
    })();
    cx.record("frame_sum_identity", 2, Relation::Below, 1e-6, run.clone().map(|r| r.0))?;
    cx.record("reconstruction", 2, Relation::Below, 1e-8, run.map(|r| r.1))?;

    // T > tau: the lower bound must be reported as exactly zero
    let sparse = (|| -> Result<f64, String> {
        let g = TimeGrid { t0: 0.0, dt: 0.1, n: 100 };
        let mut worst = 0.0f64;
        for h in [WindowSpec::rectangular(0.1, 1.0, 1.0).map_err(err)?, WindowSpec::smooth_bump(0.1, 1.0).map_err(err)?] {
            for t in [1.1, 1.5, 3.0] {
                match lattice_weight(&h, t, &g) {
                    Err(WftError::LatticeTooSparse { a, .. }) => worst = worst.max(a),
                    Err(e) => return Err(e.to_string()),
                    Ok(_) => return Err(format!("T = {t} accepted")),
                }
            }
        }
        Ok(worst)
    })();
    cx.record("sparse_lattice_lower_bound", 2, Relation::AtMost, 0.0, sparse)
}

// ---------------------------------------------------------------- wavelet

fn wavelet_suite(cx: &mut Ctx) -> Result<(), CliError> {
    use wavelet::*;
    use windowed_fourier::{SampledSignal, TimeGrid};
    let partition = (|| -> Result<f64, String> {
        let mut worst = 0.0f64;
        for (a, b) in [(2.0, 1.0), (1.5, 0.7), (3.0, 0.2)] {
            for s in [Smoothness::Finite(0), Smoothness::Finite(3), Smoothness::Infinite] {
                let p = build_meyer_pair(a, b, s).map_err(err)?;
                let f = p.f_center;
                let nus: Vec<f64> = (0..10_000).map(|i| -10.0 * f + 20.0 * f * (i as f64 + 0.5) / 10_000.0).collect();
                worst = worst.max(chi_partition(&p, &nus).max_deviation);
            }
        }
        Ok(worst)
    })();
    cx.record("chi_partition", 3, Relation::Below, 1e-12, partition)?;

    let discrete = (|| -> Result<f64, String> {
        let pair = build_meyer_pair(2.0, 1.0, Smoothness::Finite(3)).map_err(err)?;
        let bp = BandPair::from(&pair);
        let lat = DyadicLattice::new(2.0, 1.0, (-2, 6)).map_err(err)?;
        let f = SampledSignal::from_fn(TimeGrid { t0: -32.0, dt: 1.0 / 16.0, n: 1024 }, |t| {
            let env = (-(t / 4.0).powi(2) / 2.0).exp();
            C64::new(env * ((2.0 * PI * 0.9 * t).cos() + 0.5 * (2.0 * PI * 2.1 * t + 0.3).sin()), 0.0)
        })
        .map_err(err)?;
        let c = discrete_wavelet_analyze(&f, &bp, &lat).map_err(err)?;
        let back = discrete_wavelet_reconstruct(&c, &bp, &f).map_err(err)?;
        Ok(back.relative_l2_distance(&f))
    })();
    cx.record("discrete_round_trip", 3, Relation::Below, 1e-6, discrete)?;

    let parseval = (|| -> Result<Vec<f64>, String> {
        let f = SampledSignal::from_fn(TimeGrid { t0: -8.0, dt: 1.0 / 16.0, n: 256 }, |t| {
            C64::new((-t * t / 2.0).exp() * (2.0 * PI * t).cos(), 0.0)
        })
        .map_err(err)?;
        let sp = spectrum(&f);
        let h = WaveletSpec::mexican_hat();
        let uc = (1.0 / (PI * 2f64.sqrt())).ln();
        let shifts: Vec<f64> = (0..f.len()).map(|k| f.time(k)).collect();
        (0..3)
            .map(|level| {
                let du = 0.5f64.powi(level);
                let half = 1.5 * 2f64.powi(level);
                let n = (2.0 * half / du).round() as usize + 1;
                let scales: Vec<f64> = (0..n).map(|k| (uc - half + k as f64 * du).exp()).collect();
                let g = cwt_analyze_spectral(&sp, &h, &scales, &shifts).map_err(err)?;
                let e = cwt_energy(&g, cwt_normalization(&h, &scales).map_err(err)?).map_err(err)?;
                Ok((e - f.energy()).abs() / f.energy())
            })
            .collect()
    })();
    let ratio = parseval.map(|e| e.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max));
    cx.record("parseval_refinement_ratio", 3, Relation::AtMost, 0.5, ratio)
}

// ---------------------------------------------------------------- relcs

fn relcs(cx: &mut Ctx) -> Result<(), CliError> {
    use relativistic_cs::*;
    use statrs::function::gamma::gamma;
    let shell = |m: f64, s: usize| MassShell::new(m, s).map_err(err);

    let lambdas: Vec<f64> = (0..8).map(|k| 0.01 * 2000f64.powf(k as f64 / 7.0)).collect();
    let closed = (|| -> Measured {
        let mut worst = 0.0f64;
        for s in 1..=3 {
            let sh = shell(1.0, s)?;
            for &l in &lambdas {
                let c = ez_norm_sq(&sh, l, NormMethod::Closed).map_err(err)?;
                let q = ez_norm_sq(&sh, l, NormMethod::Quadrature).map_err(err)?;
                worst = worst.max((c / q - 1.0).abs());
            }
        }
        Ok(worst)
    })();
    cx.record("norm_closed_vs_quadrature", 4, Relation::Below, 1e-6, closed)?;

    let recurrence = (|| -> Measured {
        let mut worst = 0.0f64;
        for s in 1..=3 {
            let sh = shell(1.0, s)?;
            let (nu, m) = (sh.nu(), sh.mass());
            let f = |l: f64| l.powf(-nu) * bessel_k(nu, 2.0 * l * m);
            for l in [0.05, 0.5, 5.0] {
                let h = 1e-4 * l;
                let lhs = -(f(l + h) - f(l - h)) / (2.0 * h);
                let rhs = 2.0 * m * l.powf(-nu) * bessel_k(nu + 1.0, 2.0 * l * m);
                worst = worst.max((lhs / rhs - 1.0).abs());
            }
        }
        Ok(worst)
    })();
    cx.record("bessel_recurrence_fd", 4, Relation::Below, 1e-6, recurrence)?;

    let boundary = (|| -> Measured {
        let mut worst = 0.0f64;
        for s in [2, 3] {
            let sh = shell(1.0, s)?;
            let nu = sh.nu();
            let l = 1e-3;
            let g = ez_norm_sq(&sh, l, NormMethod::Closed).map_err(err)?;
            let asym = gamma(nu) * (4.0 * PI).powf(-nu - 1.0) * l.powf(-2.0 * nu);
            worst = worst.max((g / asym - 1.0).abs());
        }
        Ok(worst)
    })();
    cx.record("small_lambda_asymptote", 4, Relation::Below, 0.02, boundary)?;

    // phase-space norm of a Gaussian packet, s = 1
    let gauss = |p: f64| C64::new((-(p - 0.3f64).powi(2) / 0.5).exp(), 0.0);
    let packet = shell(1.0, 1)
        .and_then(|sh| Line::symmetric(6.0, 0.02).map_err(err).map(|l| (sh, l)))
        .and_then(|(sh, l)| MomentumWavefunction::from_fn(sh, l, gauss).map_err(err));
    let oracle = quadrature::adaptive_real(
        |p| gauss(p).norm_sqr() / (4.0 * PI * (1.0 + p * p).sqrt()),
        -12.0,
        12.0,
        0.0,
        1e-13,
        2000,
    );
    let grid = PhaseGrid {
        x: Line::symmetric(15.0, 0.1).map_err(CliError::compute)?,
        y: Line::symmetric(30.0, 0.1).map_err(CliError::compute)?,
    };
    let norm = (|| -> Measured {
        let f = packet.clone()?;
        let want = oracle.clone().map_err(err)?;
        Ok((phase_space_norm(&f, 1.0, 0.0, &grid).map_err(err)?.value / want - 1.0).abs())
    })();
    cx.record("phase_space_norm", 5, Relation::Below, 1e-3, norm)?;
    let t_indep = (|| -> Measured {
        let f = packet.clone()?;
        let a = phase_space_norm(&f, 0.7, 0.0, &grid).map_err(err)?.value;
        let b = phase_space_norm(&f, 0.7, 0.7, &grid).map_err(err)?.value;
        Ok((a / b - 1.0).abs())
    })();
    cx.record("phase_space_norm_t_independence", 5, Relation::Below, 1e-3, t_indep)?;

    let current = (|| -> Result<(f64, f64, f64), String> {
        let f = packet.clone()?;
        let g = PhaseGrid { x: Line::symmetric(15.0, 0.02).map_err(err)?, y: Line::symmetric(30.0, 0.1).map_err(err)? };
        let a = current_density(&f, 1.0, 0.3, &g, 0.01).map_err(err)?;
        let b = current_density(&f, 1.0, 1.0, &g, 0.01).map_err(err)?;
        let min_j0 = a.j0.iter().chain(&b.j0).fold(f64::INFINITY, |m, v| m.min(*v));
        Ok((a.defect.max(b.defect), min_j0, (a.flux / b.flux - 1.0).abs()))
    })();
    cx.record("continuity_defect", 6, Relation::Below, 1e-3, current.clone().map(|c| c.0))?;
    cx.record("j0_min", 6, Relation::AtLeast, 0.0, current.clone().map(|c| c.1))?;
    cx.record("flux_conservation", 6, Relation::Below, 1e-3, current.map(|c| c.2))?;

    let excess = (|| -> Measured {
        let mut worst = f64::INFINITY;
        for s in 1..=4 {
            let sh = shell(0.7, s)?;
            for k in 0..20 {
                let l = 10f64.powf(-3.0 + 5.0 * k as f64 / 19.0);
                worst = worst.min(effective_mass(&sh, l).map_err(err)? / sh.mass() - 1.0);
            }
        }
        Ok(worst)
    })();
    cx.record("effective_mass_excess", 7, Relation::Above, 0.0, excess)?;

    let on_shell = (|| -> Measured {
        let mut worst = 0.0f64;
        for s in 1..=3 {
            for (k, c) in [1.0, 3.0].into_iter().enumerate() {
                let sh = shell(1.1, s)?.with_speed(c).map_err(err)?;
                let mut y = vec![0.2 + 0.1 * k as f64; s + 1];
                y[0] = 0.9 + 0.5 * k as f64;
                let l = sh.forward_lambda(&y).map_err(err)?;
                let p = expected_momentum(&sh, &y).map_err(err)?;
                let mc = effective_mass(&sh, l).map_err(err)? * c;
                worst = worst.max((minkowski(&p, &p) / (mc * mc) - 1.0).abs());
            }
        }
        Ok(worst)
    })();
    cx.record("momentum_on_effective_shell", 7, Relation::Below, 1e-10, on_shell)?;

    let limit = |s: usize, y: [f64; 2], large: bool| -> Measured {
        let sh = shell(1.0, s)?;
        let mut yy = vec![0.0; s + 1];
        yy[..2].copy_from_slice(&y);
        let l = sh.forward_lambda(&yy).map_err(err)?;
        let p = expected_momentum(&sh, &yy).map_err(err)?;
        let yl = lower(&yy);
        let mut worst = 0.0f64;
        for mu in 0..2 {
            let want = if large { yl[mu] / l } else { sh.nu() / (l * l) * yl[mu] };
            worst = worst.max((p[mu] / want - 1.0).abs());
        }
        Ok(worst)
    };
    cx.record("large_lambda_limit", 7, Relation::Below, 0.01, limit(1, [62.5, 37.5], true))?;
    cx.record("small_lambda_limit", 7, Relation::Below, 0.02, limit(3, [1.25e-3, 0.75e-3], false))?;

    let nonrel = (|| -> Result<Vec<f64>, String> {
        let p = Line::symmetric(8.0, 0.02).map_err(err)?;
        let v: Vec<C64> = p.points().into_iter().map(|q| C64::new((-(q - 0.4f64).powi(2) / 0.98).exp(), 0.0)).collect();
        let g = PhaseGrid { x: Line::symmetric(18.0, 0.1).map_err(err)?, y: Line::symmetric(14.0, 0.05).map_err(err)? };
        nonrel_limit_defect(p, &v, 1.0, 1.0, 0.0, &[2.0, 4.0, 8.0, 16.0], &g).map_err(err)
    })();
    let steps = nonrel.clone().map(|j| j.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max));
    cx.record("nonrel_step_ratio", 8, Relation::Below, 1.0, steps)?;
    cx.record("nonrel_final_over_initial", 8, Relation::Below, 0.1, nonrel.map(|j| j[j.len() - 1] / j[0]))
}

// ---------------------------------------------------------------- spincs

fn random_sphere(rng: &mut ChaCha8Rng) -> spin_cs::SphereLabel {
    let z: f64 = rng.random_range(-1.0..1.0);
    spin_cs::SphereLabel { theta: z.acos(), phi: rng.random_range(0.0..2.0 * PI) }
}

const SPIN_ORDERS: [usize; 5] = [1, 2, 3, 4, 5];

fn spincs(cx: &mut Ctx) -> Result<(), CliError> {
    use spin_cs::*;
    let mut overlap = Ok(0.0f64);
    for two_s in SPIN_ORDERS {
        let r = SpinRep::from_twice(two_s).map_err(CliError::compute)?;
        for _ in 0..100 {
            let (a, b) = (random_sphere(&mut cx.rng), random_sphere(&mut cx.rng));
            let ov = spin_cs_vector(&r, &a).dotc(&spin_cs_vector(&r, &b)).norm_sqr();
            let (ua, ub) = (a.unit_vector(), b.unit_vector());
            let dot = ua[0] * ub[0] + ua[1] * ub[1] + ua[2] * ub[2];
            let want = ((1.0 + dot) / 2.0).powi(two_s as i32);
            overlap = overlap.map(|w: f64| w.max((ov - want).abs()));
        }
    }
    cx.record("overlap_law", 9, Relation::Below, 1e-10, overlap)?;

    let sphere = SPIN_ORDERS.iter().try_fold(0.0f64, |w, &t| -> Measured {
        let r = SpinRep::from_twice(t).map_err(err)?;
        Ok(w.max(sphere_resolution_check(&r, 16).map_err(err)?.defect))
    });
    cx.record("sphere_resolution", 9, Relation::Below, 1e-10, sphere)?;
    let holo = SPIN_ORDERS.iter().try_fold(0.0f64, |w, &t| -> Measured {
        let r = SpinRep::from_twice(t).map_err(err)?;
        Ok(w.max(holo_resolution_check(&r, 160, 2 * t + 2).map_err(err)?.defect))
    });
    cx.record("holomorphic_resolution", 9, Relation::Below, 1e-10, holo)?;

    let mut evolution = Ok(0.0f64);
    for two_s in SPIN_ORDERS {
        let r = SpinRep::from_twice(two_s).map_err(CliError::compute)?;
        for _ in 0..10 {
            let z = C64::new(cx.rng.random_range(-2.0..2.0), cx.rng.random_range(-2.0..2.0));
            let t = cx.rng.random_range(-PI..PI);
            let m = oscillator_evolve(&r, z, t).map(|e| e.mismatch).map_err(err);
            evolution = evolution.and_then(|w: f64| m.map(|m| w.max(m)));
        }
    }
    cx.record("oscillator_evolution", 9, Relation::Below, 1e-8, evolution)?;

    let at = |s: f64| -> Result<ContractionReport, String> { Ok(contraction_defect(&build_rep(s).map_err(err)?, 3)) };
    let c200 = at(200.0);
    cx.record("contraction_ladder_s200", 9, Relation::Below, 1e-2, c200.clone().map(|c| c.max_ladder()))?;
    cx.record("contraction_k3_s200", 9, Relation::Below, 1e-2, c200.map(|c| c.max_k3()))?;
    let halving = [100.0, 200.0, 400.0].iter().try_fold(0.0f64, |w, &s| -> Measured {
        let (a, b) = (at(s)?, at(2.0 * s)?);
        let rl = a.max_ladder() / b.max_ladder();
        let rk = a.max_k3() / b.max_k3();
        Ok(w.max((rl / 2.0 - 1.0).abs()).max((rk / 2.0 - 1.0).abs()))
    });
    cx.record("contraction_halving", 9, Relation::AtMost, 0.1, halving)
}

// ---------------------------------------------------------------- ast

fn ast(cx: &mut Ctx) -> Result<(), CliError> {
    use analytic_signal::*;
    use wavelet::{build_meyer_pair, cwt_analyze, Smoothness, WaveletSpec};
    use windowed_fourier::{SampledSignal, TimeGrid};

    let cosine = (|| -> Measured {
        let a = 2.0 * PI * 3.0;
        let f = FieldSample::from_fn(vec![64], vec![0.0], vec![1.0 / 64.0], |x| C64::new((a * x[0]).cos(), 0.0)).map_err(err)?;
        let mut worst = 0.0f64;
        for (x, y) in [(0.1, 0.2), (0.37, 0.05), (0.8, -0.3), (0.25, -0.01)] {
            let z = C64::new(x, -y);
            let got = analytic_signal_1d(&f, z).map_err(err)?;
            let sign = if y > 0.0 { -1.0 } else { 1.0 };
            worst = worst.max((got - (C64::new(0.0, sign * a) * z).exp() * 0.5).norm());
        }
        Ok(worst)
    })();
    cx.record("cosine_continuation", 10, Relation::Below, 1e-8, cosine)?;

    let methods = (|| -> Measured {
        let mut worst = 0.0f64;
        let g1 = FieldSample::from_fn(vec![701], vec![-7.0], vec![0.02], |x| {
            C64::new((-x[0] * x[0]).exp() * (1.0 + 0.4 * x[0]), 0.0)
        })
        .map_err(err)?;
        let fa = FourierAst::padded(&g1, 32).map_err(err)?;
        for (x, y) in [(0.0, 0.3), (0.7, -0.5), (-1.2, 1.5), (2.0, 0.05)] {
            let d = fa.eval(&[x], &[y]).map_err(err)? - ast_line(&g1, &[x], &[y]).map_err(err)?;
            worst = worst.max(d.norm());
        }
        let g2 = FieldSample::from_fn(vec![121, 121], vec![-6.0, -6.0], vec![0.1, 0.1], |x| {
            C64::new((-(x[0] * x[0] + 0.5 * x[1] * x[1])).exp() * (1.0 + 0.3 * x[0]), 0.0)
        })
        .map_err(err)?;
        let fa = FourierAst::padded(&g2, 8).map_err(err)?;
        for (x, y) in [([0.3, -0.2], [0.5, 0.2]), ([1.0, 0.5], [-0.3, 0.7]), ([0.0, 0.0], [0.1, 0.0])] {
            let d = fa.eval(&x, &y).map_err(err)? - ast_line(&g2, &x, &y).map_err(err)?;
            worst = worst.max(d.norm());
        }
        Ok(worst)
    })();
    cx.record("fourier_vs_line", 10, Relation::Below, 1e-4, methods)?;

    let xray_cwt = (|| -> Measured {
        let s = SampledSignal::from_fn(TimeGrid { t0: -8.0, dt: 1.0 / 32.0, n: 513 }, |t| {
            C64::new((-t * t).exp() * (1.0 + 0.5 * t), 0.2 * t * (-t * t).exp())
        })
        .map_err(err)?;
        let f = FieldSample::from_signal(&s);
        let h = WaveletSpec::mexican_hat();
        let scales = [0.5, 1.25, -0.75, 2.0];
        let shifts: Vec<f64> = (0..9).map(|k| s.time(160 + 24 * k)).collect();
        let cwt = cwt_analyze(&s, &h, &scales, &shifts).map_err(err)?;
        let mut worst = 0.0f64;
        for (i, &a) in scales.iter().enumerate() {
            for (j, &x) in shifts.iter().enumerate() {
                let v = windowed_xray(&f, &h, &[x], &[a]).map_err(err)? * a.abs().sqrt();
                worst = worst.max((v - cwt.get(i, j)).norm());
            }
        }
        Ok(worst)
    })();
    cx.record("xray_equals_scaled_cwt", 10, Relation::Below, 1e-10, xray_cwt)?;

    let norm = (|| -> Measured {
        let h = WaveletSpec::from_meyer(&build_meyer_pair(2.0, 1.0, Smoothness::Finite(3)).map_err(err)?, true);
        let mut worst = 0.0f64;
        for p in [[1.0, 0.0], [0.3, -0.8], [-2.5, 1.1]] {
            worst = worst.max((xray_normalization(&h, &p).map_err(err)? - 1.0).abs());
        }
        worst = worst.max((xray_normalization(&WaveletSpec::mexican_hat(), &[0.2, 0.9]).map_err(err)? - 1.0).abs());
        Ok(worst)
    })();
    cx.record("normalization_2d", 10, Relation::Below, 1e-6, norm)?;

    let recon = (|| -> Measured {
        let f = FieldSample::from_fn(vec![48, 48], vec![-6.0, -6.0], vec![0.25, 0.25], |x| {
            C64::new((-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp(), 0.0)
        })
        .map_err(err)?;
        let h = WaveletSpec::mexican_hat();
        let mut errs = Vec::new();
        for (nr, nphi, r_min, r_max) in [(10, 10, 0.05, 8.0), (16, 16, 0.05, 32.0), (24, 24, 0.025, 64.0)] {
            let grid = YGrid::polar(r_min, r_max, nr, nphi).map_err(err)?;
            let coeffs = xray_analyze_spectral(&f, &h, &grid, 4).map_err(err)?;
            errs.push(xray_reconstruct(&coeffs, &h, Some(&f)).map_err(err)?.rel_error.ok_or("no reference")?);
        }
        Ok(errs.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max))
    })();
    cx.record("reconstruction_refinement_ratio", 10, Relation::Below, 1.0, recon)
}

// ---------------------------------------------------------------- coherent

fn coherent(cx: &mut Ctx) -> Result<(), CliError> {
    use coherent_states::*;
    let grid = TimeGrid { t0: -12.0, dt: 0.05, n: 481 };
    let res = (|| -> Measured {
        let labels = LabelGrid::square(10.0, 81).map_err(err)?;
        let tests: Vec<SampledSignal> = (0..5)
            .map(|n| SampledSignal::from_fn(grid, |x| C64::new(hermite_function(n, x), 0.0)))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        canonical_resolution_check(&labels, &tests).map_err(err)
    })();
    cx.record("canonical_resolution", 0, Relation::Below, 1e-6, res)?;

    let overlap = (|| -> Measured {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z = C64::new(cx.rng.random_range(-2.0..2.0), cx.rng.random_range(-2.0..2.0));
            let w = C64::new(cx.rng.random_range(-2.0..2.0), cx.rng.random_range(-2.0..2.0));
            let a = CanonicalCS::from_label(z).sample(grid).map_err(err)?;
            let b = CanonicalCS::from_label(w).sample(grid).map_err(err)?;
            let got = inner(&a, &b).map_err(err)?;
            let (na, nb) = (inner(&a, &a).map_err(err)?.re, inner(&b, &b).map_err(err)?.re);
            // normalized overlap modulus: exp(-|z - w|^2 / 4)
            worst = worst.max((got.norm() / (na * nb).sqrt() - (-(z - w).norm_sqr() / 4.0).exp()).abs());
        }
        Ok(worst)
    })();
    cx.record("canonical_overlap", 0, Relation::Below, 1e-10, overlap)?;
    Ok(())
}
