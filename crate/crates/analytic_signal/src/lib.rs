//! Analytic-signal transform of sampled fields, directional Hilbert transform,
//! holomorphy checks and the windowed X-ray transform.
//!
//! Fourier convention: `f^(p) = int e^{2 pi i p.x} f(x) dx`, so
//! `f(x - iy) = int dp theta(y.p) e^{-2 pi i (x - iy).p} f^(p)` with `theta(0) = 1/2`.
//! Inputs are grid samples of functions that have decayed at the grid faces.
//!
//! Window sign convention for the X-ray transform: `h(t) = 1 / (2 pi (1 + i t))`
//! gives `f_h(x, y) = f(x - iy)`, while `1 / (2 pi (1 - i t))` gives `f(x + iy)`.

mod ast;
mod field;
mod xray;

pub use ast::{
    analytic_signal_1d, ast_eval, ast_line, dbar_defect, directional_hilbert, pseudo_exp, theta, AstMethod, DbarReport,
    FourierAst, HilbertEstimate, DECAY_TOL,
};
pub use field::{inverse_spectrum, FieldSample, FieldSpectrum};
pub use xray::{
    windowed_xray, xray_admissibility, xray_analyze, xray_analyze_spectral, xray_normalization, xray_reconstruct, XrayAdmissibility,
    XrayCoeffs, XrayReconstruction, YGrid,
};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AstError {
    #[error("dimension: {0}")]
    Dimension(String),
    #[error("direction y must be nonzero")]
    ZeroDirection,
    #[error("field has not decayed at the grid boundary (|f| = {value:e}, max {max:e})")]
    InsufficientDecay { value: f64, max: f64 },
    #[error("eps extrapolation did not settle (estimate {estimate}, change {error:e})")]
    NonConvergent { estimate: C64, error: f64 },
    #[error("window is not admissible: {0}")]
    Inadmissible(String),
    #[error("window {0} has no time-domain form")]
    NoTimeDomain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
}
