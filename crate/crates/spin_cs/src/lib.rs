//! SU(2) spin coherent states: representation matrices, the sphere frame
//! `h_n`, the holomorphic frame `h_zeta`, their resolutions of unity, and the
//! large-spin contraction to the oscillator.
//!
//! Both frames start from the lowest-weight vector `v_{-s}`. Inner products
//! are antilinear in the first slot.

mod contraction;
mod frames;
mod rep;

pub use contraction::{contraction_defect, nminus_limit, oscillator_evolve, ContractionReport, Evolution, EVOLUTION_TOL};
pub use frames::{
    holo_cs_vector, holo_resolution_check, sphere_resolution_check, spin_cs_vector, spin_expectations,
    spin_expectations_closed, HoloLabel, ResolutionReport, SphereLabel, SpinExpectations,
};
pub use rep::{build_rep, SpinRep};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinError {
    #[error("spin must be a positive half-integer, got {0}")]
    InvalidSpin(f64),
    #[error("invalid label: {0}")]
    Label(String),
    #[error("evolved state misses the coherent state by {value:e}")]
    Mismatch { value: f64 },
}
