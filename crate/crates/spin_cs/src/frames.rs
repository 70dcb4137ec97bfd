use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::rep::SpinRep;
use crate::{SpinError, C64};

/// Point of the unit sphere, `n = (cos phi sin theta, sin phi sin theta, cos theta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereLabel {
    pub theta: f64,
    pub phi: f64,
}

impl SphereLabel {
    pub fn new(theta: f64, phi: f64) -> Result<Self, SpinError> {
        if !(theta.is_finite() && phi.is_finite()) || !(0.0..=PI).contains(&theta) {
            return Err(SpinError::Label(format!("theta={theta} phi={phi}")));
        }
        Ok(Self { theta, phi: phi.rem_euclid(2.0 * PI) })
    }

    pub fn from_vector(n: [f64; 3]) -> Result<Self, SpinError> {
        let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !r.is_finite() || (r - 1.0).abs() > 1e-12 {
            return Err(SpinError::Label(format!("|n| = {r}")));
        }
        Self::new(n[2].clamp(-1.0, 1.0).acos(), n[1].atan2(n[0]))
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [cp * st, sp * st, ct]
    }
}

/// Point `zeta` of the plane; the north pole has no label.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HoloLabel {
    pub zeta: C64,
}

impl HoloLabel {
    pub fn new(zeta: C64) -> Result<Self, SpinError> {
        if !(zeta.re.is_finite() && zeta.im.is_finite()) {
            return Err(SpinError::Label(format!("zeta = {zeta}")));
        }
        Ok(Self { zeta })
    }

    /// Stereographic image of a sphere point, `zeta = e^{i phi} tan(theta/2)`.
    pub fn from_sphere(n: &SphereLabel) -> Result<Self, SpinError> {
        Self::new(C64::from_polar((n.theta / 2.0).tan(), n.phi))
    }
}

/// `h_n = exp(-i phi S_3) exp(-i theta S_2) v_{-s}`.
pub fn spin_cs_vector(rep: &SpinRep, n: &SphereLabel) -> DVector<C64> {
    let mi = C64::new(0.0, -1.0);
    let a = (rep.s3() * (mi * n.phi)).exp();
    let b = (rep.s2() * (mi * n.theta)).exp();
    a * b * rep.lowest()
}

/// `h_zeta = exp(-conj(zeta) S_+) v_{-s} = sum_n conj(zeta)^n u_n`, with
/// `u_n = (-S_+)^n v_{-s} / n!`.
pub fn holo_cs_vector(rep: &SpinRep, zeta: C64) -> Result<DVector<C64>, SpinError> {
    HoloLabel::new(zeta)?;
    let d = rep.dim();
    let zb = zeta.conj();
    let mut out = DVector::zeros(d);
    // u_n sits on the single basis vector with index 2s - n
    let mut coef = C64::new(1.0, 0.0);
    let mut i = rep.twice_spin();
    out[i] = coef;
    for n in 1..d {
        coef = -coef * zb * rep.raise(i) / n as f64;
        i -= 1;
        out[i] = coef;
    }
    Ok(out)
}

/// Outcome of a quadrature check of a resolution of unity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolutionReport {
    /// Largest entry of `|integral - I|`.
    pub defect: f64,
    /// Largest off-diagonal entry of the integral.
    pub off_diagonal: f64,
    /// Frame constant `c` from the trace, before normalization.
    pub trace_constant: f64,
    pub nodes: usize,
}

fn report(sum: &DMatrix<C64>, trace_constant: f64, nodes: usize) -> ResolutionReport {
    let d = sum.nrows();
    let mut defect = 0.0f64;
    let mut off = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((sum[(i, j)] - target).norm());
            if i != j {
                off = off.max(sum[(i, j)].norm());
            }
        }
    }
    ResolutionReport { defect, off_diagonal: off, trace_constant, nodes }
}

/// `(2s+1)/(4 pi) int dn |h_n><h_n|` on Gauss-Legendre nodes in `cos theta`
/// times `2 order` uniform nodes in `phi`.
pub fn sphere_resolution_check(rep: &SpinRep, order: usize) -> Result<ResolutionReport, SpinError> {
    if order == 0 {
        return Err(SpinError::Label("quadrature order must be positive".into()));
    }
    let d = rep.dim();
    let (xs, ws) = quadrature::gauss_legendre(order);
    let n_phi = 2 * order;
    let dphi = 2.0 * PI / n_phi as f64;
    let mut sum = DMatrix::<C64>::zeros(d, d);
    let mut trace = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        let theta = x.clamp(-1.0, 1.0).acos();
        for k in 0..n_phi {
            let h = spin_cs_vector(rep, &SphereLabel { theta, phi: k as f64 * dphi });
            let wt = w * dphi;
            trace += wt * h.norm_squared();
            sum += &h * h.adjoint() * C64::new(wt, 0.0);
        }
    }
    // int dn |h><h| = c I with c (2s+1) = 4 pi
    let c = trace / d as f64;
    sum *= C64::new(d as f64 / (4.0 * PI), 0.0);
    Ok(report(&sum, c, xs.len() * n_phi))
}

/// `(2s+1)/pi int d^2 zeta (1+|zeta|^2)^{-2s-2} |h_zeta><h_zeta|` with
/// `r = rho / (1 - rho)`, Gauss-Legendre in `rho` and uniform angles.
pub fn holo_resolution_check(rep: &SpinRep, radial: usize, angular: usize) -> Result<ResolutionReport, SpinError> {
    if radial == 0 || angular == 0 {
        return Err(SpinError::Label("quadrature order must be positive".into()));
    }
    let d = rep.dim();
    let two_s = rep.twice_spin() as i32;
    let (rho, wr) = quadrature::gauss_legendre_on(radial, 0.0, 1.0);
    let dth = 2.0 * PI / angular as f64;
    let mut sum = DMatrix::<C64>::zeros(d, d);
    let mut trace = 0.0;
    for (p, w) in rho.iter().zip(&wr) {
        let r = p / (1.0 - p);
        let jac = 1.0 / (1.0 - p).powi(2);
        let weight = w * jac * r * dth / (1.0 + r * r).powi(two_s + 2);
        for k in 0..angular {
            let h = holo_cs_vector(rep, C64::from_polar(r, k as f64 * dth))?;
            trace += weight * h.norm_squared();
            sum += &h * h.adjoint() * C64::new(weight, 0.0);
        }
    }
    // 4s int d^2 zeta (1+|zeta|^2)^{-2s-2} <h|h> = c (2s + 1), so c = 4 pi s/(2s + 1)
    let c = 4.0 * rep.spin() * trace / d as f64;
    sum *= C64::new(d as f64 / PI, 0.0);
    Ok(report(&sum, c, radial * angular))
}

/// Normalized expectations in `h_zeta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinExpectations {
    pub s_plus: C64,
    pub s3: f64,
    /// `|S_+|^2 + S_3^2`.
    pub s_sq: f64,
}

/// Expectations of `S_+` and `S_3` from matrix elements.
pub fn spin_expectations(rep: &SpinRep, zeta: C64) -> Result<SpinExpectations, SpinError> {
    let h = holo_cs_vector(rep, zeta)?;
    let n = h.norm_squared();
    let s_plus = h.dotc(&(rep.s_plus() * &h)) / n;
    let s3 = h.dotc(&(rep.s3() * &h)).re / n;
    Ok(SpinExpectations { s_plus, s3, s_sq: s_plus.norm_sqr() + s3 * s3 })
}

/// `S_+ = -2s zeta/(1+|zeta|^2)`, `S_3 = s(|zeta|^2-1)/(|zeta|^2+1)`.
pub fn spin_expectations_closed(s: f64, zeta: C64) -> SpinExpectations {
    let r2 = zeta.norm_sqr();
    let s_plus = -zeta * (2.0 * s / (1.0 + r2));
    let s3 = s * (r2 - 1.0) / (r2 + 1.0);
    SpinExpectations { s_plus, s3, s_sq: s_plus.norm_sqr() + s3 * s3 }
}
