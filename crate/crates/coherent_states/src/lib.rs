//! Canonical (Gaussian) coherent states on a sampled line with the Bargmann
//! transform, and Galilean coherent states in momentum space.
//!
//! Units have `hbar = 1`. In position space `P = -i d/dx`; in momentum space
//! `X = i d/dp`. Momentum-space wave functions pair as
//! `<phi|psi> = (2 pi)^{-1} int dp conj(phi) psi`, and the Galilean transform is
//! `f_u(z) = int dp conj(e_z(p)) f^(p)`.

mod canonical;
mod galilean;
mod grid;
mod hermite;

pub use canonical::{
    bargmann_dbar, bargmann_norm, bargmann_reconstruct, bargmann_transform, canonical_cs_eval, canonical_measure,
    canonical_resolution_check, CanonicalCS,
};
pub use galilean::{
    galilean_cs, galilean_evolved, galilean_measure, galilean_moments, galilean_resolution_check, galilean_transform,
    momentum_inner, EvolvedReport, GalileanCS,
};
pub use grid::{inner, momentum_space_moments, position_space_moments, spectral_derivative, LabelGrid, Moments};
pub use hermite::hermite_function;
pub use windowed_fourier::{SampledSignal, TimeGrid};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("grid: {0}")]
    Grid(String),
    #[error("state has zero norm on the grid")]
    ZeroNorm,
}

impl From<windowed_fourier::WftError> for CsError {
    fn from(e: windowed_fourier::WftError) -> Self {
        CsError::Grid(e.to_string())
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, CsError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CsError::NonPositive { name, value })
    }
}
