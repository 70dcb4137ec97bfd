use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::bessel::{bessel_k, bessel_k_complex, bessel_k_seq};
use crate::shell::{lower, minkowski, MassShell, TubePoint, TubeRegion};
use crate::{positive, RelError, C64};

/// Distance from the cut below which `eta^2` is rejected.
pub const CUT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormMethod {
    Closed,
    Quadrature,
}

/// `||e_z||^2 = G(lambda)`.
pub fn ez_norm_sq(shell: &MassShell, lambda: f64, method: NormMethod) -> Result<f64, RelError> {
    positive("lambda", lambda)?;
    match method {
        NormMethod::Closed => Ok(norm_closed(shell, lambda)),
        NormMethod::Quadrature => norm_quadrature(shell, lambda),
    }
}

fn norm_closed(shell: &MassShell, lambda: f64) -> f64 {
    let (nu, mc) = (shell.nu(), shell.mc());
    (mc / (4.0 * PI * lambda)).powf(nu) * bessel_k(nu, 2.0 * lambda * mc) / (2.0 * PI)
}

/// Radial integral of `dp~ e^{-2 lambda omega}` in the rest frame.
fn norm_quadrature(shell: &MassShell, lambda: f64) -> Result<f64, RelError> {
    let s = shell.dim() as f64;
    let mc = shell.mc();
    let sphere = 2.0 * PI.powf(s / 2.0) / gamma(s / 2.0);
    let pref = sphere / (2.0 * PI).powf(s);
    // e^{-2 lambda (omega - mc)} drops below e^{-80} past p_max
    let w_max = mc + 40.0 / lambda;
    let p_max = (w_max * w_max - mc * mc).sqrt();
    let p_min = 1e-3 * mc.min(1.0 / lambda);
    let mut breaks = vec![0.0];
    let mut b = p_min;
    while b < p_max {
        breaks.push(b);
        b *= 2.0;
    }
    breaks.push(p_max);
    let r = quadrature::adaptive_pieces(
        |p| {
            let w = (mc * mc + p * p).sqrt();
            let excess = p * p / (w + mc);
            C64::new(p.powf(s - 1.0) / (2.0 * w) * (-2.0 * lambda * excess).exp(), 0.0)
        },
        &breaks,
        0.0,
        1e-13,
        4000,
    )
    .map_err(|e| RelError::Quadrature(e.to_string()))?;
    Ok(pref * r.value.re * (-2.0 * lambda * mc).exp())
}

/// Reproducing kernel `K(z', conj z) = <e_z'|e_z>`.
pub fn kernel_eval(shell: &MassShell, zp: &TubePoint, z: &TubePoint) -> Result<C64, RelError> {
    let c = shell.speed();
    for p in [zp, z] {
        if p.x.len() != shell.dim() + 1 {
            return Err(RelError::Length { expected: shell.dim() + 1, got: p.x.len() });
        }
        if p.region(c) != TubeRegion::Forward {
            return Err(RelError::NotForward);
        }
    }
    let a = zp.components(c);
    let b = z.components(c);
    let w: Vec<C64> = a.iter().zip(&b).map(|(u, v)| u - v.conj()).collect();
    let w2 = w[0] * w[0] - w[1..].iter().map(|v| v * v).sum::<C64>();
    let eta2 = -w2;
    if eta2.norm() == 0.0 || (eta2.re <= 0.0 && eta2.im.abs() <= CUT_TOL * eta2.norm()) {
        return Err(RelError::NearCut);
    }
    let eta = eta2.sqrt();
    let (nu, mc) = (shell.nu(), shell.mc());
    let pre = if nu == 0.0 { C64::new(1.0, 0.0) } else { (C64::new(mc, 0.0) / (eta * 2.0 * PI)).powf(nu) };
    Ok(pre * bessel_k_complex(nu, eta * mc) / (2.0 * PI))
}

/// `K_{nu+1}(x) / K_nu(x)` and `K_{nu+2}(x) / K_nu(x)`.
fn ratios(nu: f64, x: f64) -> (f64, f64) {
    let k = bessel_k_seq(nu, C64::new(x, 0.0), 3);
    (k[1].re / k[0].re, k[2].re / k[0].re)
}

/// Expected energy-momentum `<P_mu>` with lower indices.
pub fn expected_momentum(shell: &MassShell, y: &[f64]) -> Result<Vec<f64>, RelError> {
    let lambda = shell.forward_lambda(y)?;
    let mc = shell.mc();
    let (r, _) = ratios(shell.nu(), 2.0 * lambda * mc);
    let yl = lower(&shell.covariant(y)?);
    Ok(yl.iter().map(|v| r * mc / lambda * v).collect())
}

/// `m_lambda = m K_{nu+1}(2 lambda mc) / K_nu(2 lambda mc)`.
pub fn effective_mass(shell: &MassShell, lambda: f64) -> Result<f64, RelError> {
    positive("lambda", lambda)?;
    Ok(shell.mass() * ratios(shell.nu(), 2.0 * lambda * shell.mc()).0)
}

/// `C_{mu nu} = <P_mu P_nu> - <P_mu><P_nu>`.
pub fn correlation_matrix(shell: &MassShell, y: &[f64]) -> Result<Vec<Vec<f64>>, RelError> {
    let lambda = shell.forward_lambda(y)?;
    let mc = shell.mc();
    let (r, r2) = ratios(shell.nu(), 2.0 * lambda * mc);
    let yl = lower(&shell.covariant(y)?);
    let n = yl.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let g = if i != j { 0.0 } else if i == 0 { 1.0 } else { -1.0 };
            out[i][j] = yl[i] * yl[j] * (mc / lambda).powi(2) * (r2 - r * r) - g * mc * r / (2.0 * lambda);
        }
    }
    Ok(out)
}

/// Normalization `A_lambda` of the phase-space measure; `lambda = 0` gives
/// the limit `A_0`.
pub fn measure_constant(shell: &MassShell, lambda: f64) -> Result<f64, RelError> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(RelError::NonPositive { name: "lambda", value: lambda });
    }
    let (nu, mc) = (shell.nu(), shell.mc());
    if lambda == 0.0 {
        return Ok(PI.powf(nu) * gamma(nu + 1.0) / (2.0 * mc.powi(shell.dim() as i32 + 1)));
    }
    Ok((PI * lambda / mc).powf(nu + 1.0) * bessel_k(nu + 1.0, 2.0 * lambda * mc) / PI)
}

/// `y p` for spacetime `y` (time in time units) and on-shell momentum `p`.
pub fn temper_pairing(shell: &MassShell, y: &[f64], p: &[f64]) -> Result<f64, RelError> {
    let yc = shell.covariant(y)?;
    if p.len() != shell.dim() {
        return Err(RelError::Length { expected: shell.dim(), got: p.len() });
    }
    let mut pv = vec![shell.omega(p)];
    pv.extend_from_slice(p);
    Ok(minkowski(&yc, &pv))
}
