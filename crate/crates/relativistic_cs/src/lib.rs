//! Coherent states of a free relativistic scalar particle on the forward tube
//! `T_+ = { x - iy : y in V'_+ }`.
//!
//! Metric `diag(1, -1, ..., -1)`, `hbar = 1`. The invariant measure is
//! `dp~ = (2 pi)^{-s} (2 omega)^{-1} d^s p`, a state is `f(z) = int dp~ e^{-izp} a(p)`
//! and the evaluation vectors are `e_z(p) = e^{i conj(z) p}`. Time components
//! of user-facing vectors are in time units and get multiplied by `c`.

mod bessel;
mod kernel;
mod phase;
mod shell;

pub use bessel::{bessel_k, bessel_k_complex, bessel_k_scaled, bessel_k_seq};
pub use kernel::{
    correlation_matrix, effective_mass, expected_momentum, ez_norm_sq, kernel_eval, measure_constant, temper_pairing,
    NormMethod, CUT_TOL,
};
pub use phase::{
    current_density, nonrel_limit_defect, phase_space_norm, CurrentReport, Line, MomentumWavefunction, PhaseGrid,
    PhaseNorm, TAIL_TOL,
};
pub use shell::{lower, minkowski, MassShell, TubePoint, TubeRegion};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("space dimension must be at least 1, got {0}")]
    Dimension(usize),
    #[error("expected {expected} components, got {got}")]
    Length { expected: usize, got: usize },
    #[error("non-finite input")]
    NonFinite,
    #[error("point is not in the forward tube")]
    NotForward,
    #[error("kernel argument lies on the branch cut")]
    NearCut,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("grid: {0}")]
    Grid(String),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("integrand at the grid boundary is {tail:e} of its peak")]
    Truncation { tail: f64 },
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, RelError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(RelError::NonPositive { name, value })
    }
}

pub(crate) fn finite(v: &[f64]) -> Result<(), RelError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(RelError::NonFinite)
    }
}
