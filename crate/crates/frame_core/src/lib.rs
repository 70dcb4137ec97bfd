//! Finite weighted frames in C^d.
//!
//! A frame is a finite family of vectors `h_m` with positive weights `w_m`.
//! The frame operator is `G = sum_m w_m |h_m><h_m|`, and its extreme
//! eigenvalues are the frame bounds `A <= B`. Everything downstream
//! (reciprocal frame, reproducing kernel, reconstruction) goes through `G^{-1}`.

mod eig;
mod text;

pub use eig::hermitian_extremes;
pub use text::{read_frame, write_frame};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

/// Frames are declared valid when `A > FRAME_RTOL * B`.
pub const FRAME_RTOL: f64 = 1e-12;
pub const NEUMANN_TOL: f64 = 1e-12;
pub const NEUMANN_MAX_TERMS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("empty frame")]
    Empty,
    #[error("weight {index} is not a positive finite number ({value})")]
    BadWeight { index: usize, value: f64 },
    #[error("vector {index} has a non-finite entry")]
    NonFinite { index: usize },
    #[error("not a frame: lower bound {a:e} vs upper bound {b:e}")]
    NotAFrame { a: f64, b: f64 },
    #[error("Neumann series stopped after {terms} terms with residual {residual:e}")]
    NeumannBudget { terms: usize, residual: f64 },
    #[error("index {index} out of range for a frame with {len} vectors")]
    Index { index: usize, len: usize },
    #[error("frame text: {0}")]
    Parse(String),
}

/// Finite weighted family of vectors with its frame operator and bounds.
#[derive(Clone, Debug)]
pub struct FrameSystem {
    vectors: Vec<DVector<C64>>,
    weights: Vec<f64>,
    metric: DMatrix<C64>,
    bounds: (f64, f64),
}

impl FrameSystem {
    pub fn new(vectors: Vec<Vec<C64>>, weights: Vec<f64>) -> Result<Self, FrameError> {
        if vectors.is_empty() {
            return Err(FrameError::Empty);
        }
        if weights.len() != vectors.len() {
            return Err(FrameError::Dimension { expected: vectors.len(), got: weights.len() });
        }
        let d = vectors[0].len();
        if d == 0 {
            return Err(FrameError::Empty);
        }
        for (i, (v, &w)) in vectors.iter().zip(&weights).enumerate() {
            if v.len() != d {
                return Err(FrameError::Dimension { expected: d, got: v.len() });
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(FrameError::BadWeight { index: i, value: w });
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(FrameError::NonFinite { index: i });
            }
        }
        let vectors: Vec<DVector<C64>> = vectors.into_iter().map(DVector::from_vec).collect();
        let mut metric = DMatrix::<C64>::zeros(d, d);
        for (v, &w) in vectors.iter().zip(&weights) {
            metric += v * v.adjoint() * C64::new(w, 0.0);
        }
        // symmetrize away rounding so the eigen-solver sees an exactly Hermitian matrix
        let metric = (&metric + metric.adjoint()) * C64::new(0.5, 0.0);
        let bounds = hermitian_extremes(&metric);
        Ok(FrameSystem { vectors, weights, metric, bounds })
    }

    /// All weights equal to one.
    pub fn unweighted(vectors: Vec<Vec<C64>>) -> Result<Self, FrameError> {
        let n = vectors.len();
        Self::new(vectors, vec![1.0; n])
    }

    /// Real vectors, unit weights.
    pub fn from_real(vectors: &[Vec<f64>]) -> Result<Self, FrameError> {
        Self::unweighted(
            vectors.iter().map(|v| v.iter().map(|&x| C64::new(x, 0.0)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.metric.nrows()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<C64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The frame operator `G`.
    pub fn metric(&self) -> &DMatrix<C64> {
        &self.metric
    }

    /// Extreme eigenvalues of `G`, without the validity test.
    pub fn raw_bounds(&self) -> (f64, f64) {
        self.bounds
    }

    pub fn is_frame(&self) -> bool {
        self.bounds.0 > FRAME_RTOL * self.bounds.1
    }

    /// Synthesis matrix with columns `h_m`.
    pub fn synthesis_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_columns(&self.vectors)
    }

    fn check_frame(&self) -> Result<(), FrameError> {
        if self.is_frame() {
            Ok(())
        } else {
            Err(FrameError::NotAFrame { a: self.bounds.0, b: self.bounds.1 })
        }
    }

    /// `G^{-1}` by a Hermitian solve; used where the Neumann series is not requested.
    pub fn metric_inverse(&self) -> Result<DMatrix<C64>, FrameError> {
        self.check_frame()?;
        let chol = self.metric.clone().cholesky().ok_or(FrameError::NotAFrame {
            a: self.bounds.0,
            b: self.bounds.1,
        })?;
        Ok(chol.inverse())
    }
}

/// Coefficients `f~(m)` of a vector with respect to a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    pub values: Vec<C64>,
}

impl CoefficientVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_len(frame: &FrameSystem, n: usize) -> Result<(), FrameError> {
    if n != frame.len() {
        return Err(FrameError::Dimension { expected: frame.len(), got: n });
    }
    Ok(())
}

/// `f~(m) = <h_m | f>`.
pub fn analyze(frame: &FrameSystem, f: &[C64]) -> Result<CoefficientVector, FrameError> {
    if f.len() != frame.dim() {
        return Err(FrameError::Dimension { expected: frame.dim(), got: f.len() });
    }
    let fv = DVector::from_column_slice(f);
    let values = frame.vectors.iter().map(|h| h.dotc(&fv)).collect();
    Ok(CoefficientVector { values })
}

/// Frame bounds `(A, B)`; fails when `A <= 1e-12 B`.
pub fn frame_bounds(frame: &FrameSystem) -> Result<(f64, f64), FrameError> {
    frame.check_frame()?;
    Ok(frame.bounds)
}

/// Outcome of [`neumann_inverse`].
#[derive(Clone, Debug)]
pub struct NeumannInverse {
    pub ginv: DMatrix<C64>,
    pub terms_used: usize,
    /// Frobenius norm of `Ginv G - I`.
    pub residual: f64,
}

/// `G^{-1} = c sum_k (I - cG)^k` with `c = 2/(A+B)`.
///
/// Terms are added until the next one has Frobenius norm below `tol`. A tight
/// frame stops after the first term, giving `G^{-1} = I/A`.
pub fn neumann_inverse(
    frame: &FrameSystem,
    tol: f64,
    max_terms: usize,
) -> Result<NeumannInverse, FrameError> {
    let (a, b) = frame_bounds(frame)?;
    let d = frame.dim();
    let c = 2.0 / (a + b);
    let ident = DMatrix::<C64>::identity(d, d);
    let r = &ident - &frame.metric * C64::new(c, 0.0);
    let mut term = &ident * C64::new(c, 0.0);
    let mut sum = term.clone();
    let mut terms_used = 1;
    loop {
        term = &term * &r;
        if term.norm() < tol {
            break;
        }
        if terms_used >= max_terms {
            let residual = (&sum * &frame.metric - &ident).norm();
            return Err(FrameError::NeumannBudget { terms: terms_used, residual });
        }
        sum += &term;
        terms_used += 1;
    }
    let residual = (&sum * &frame.metric - &ident).norm();
    Ok(NeumannInverse { ginv: sum, terms_used, residual })
}

/// Reciprocal frame `h^m = G^{-1} h_m` with the same weights.
pub fn reciprocal_frame(frame: &FrameSystem) -> Result<FrameSystem, FrameError> {
    let ginv = frame.metric_inverse()?;
    let vectors = frame.vectors.iter().map(|h| (&ginv * h).as_slice().to_vec()).collect();
    FrameSystem::new(vectors, frame.weights.clone())
}

/// `K(m, m') = <h_m | G^{-1} h_m'>`.
pub fn reproducing_kernel(frame: &FrameSystem) -> Result<DMatrix<C64>, FrameError> {
    let ginv = frame.metric_inverse()?;
    let h = frame.synthesis_matrix();
    Ok(h.adjoint() * ginv * h)
}

/// `f = sum_m w_m G^{-1} h_m f~(m)`.
pub fn reconstruct(
    frame: &FrameSystem,
    coeffs: &CoefficientVector,
) -> Result<DVector<C64>, FrameError> {
    check_len(frame, coeffs.len())?;
    let ginv = frame.metric_inverse()?;
    let mut acc = DVector::<C64>::zeros(frame.dim());
    for ((h, &w), &c) in frame.vectors.iter().zip(&frame.weights).zip(&coeffs.values) {
        acc += h * (c * w);
    }
    Ok(ginv * acc)
}

/// Weighted norm of `g - K g`, where `(K g)(m) = sum_m' K(m,m') w_m' g(m')`.
pub fn consistency_residual(frame: &FrameSystem, g: &CoefficientVector) -> Result<f64, FrameError> {
    check_len(frame, g.len())?;
    let k = reproducing_kernel(frame)?;
    let wg = DVector::from_iterator(
        g.len(),
        g.values.iter().zip(&frame.weights).map(|(v, &w)| v * w),
    );
    let kg = k * wg;
    let r: f64 = g
        .values
        .iter()
        .zip(kg.iter())
        .zip(&frame.weights)
        .map(|((a, b), &w)| w * (a - b).norm_sqr())
        .sum();
    Ok(r.sqrt())
}

/// Least-squares reconstruction from coefficients known only on a subset.
///
/// `partial` lists `(index, value)`; missing indices are treated as zero,
/// which gives `f_1 = G^{-1} T* g`.
pub fn least_squares_reconstruct(
    frame: &FrameSystem,
    partial: &[(usize, C64)],
) -> Result<DVector<C64>, FrameError> {
    if partial.is_empty() {
        return Err(FrameError::Empty);
    }
    let mut g = vec![C64::new(0.0, 0.0); frame.len()];
    for &(i, v) in partial {
        if i >= frame.len() {
            return Err(FrameError::Index { index: i, len: frame.len() });
        }
        g[i] = v;
    }
    reconstruct(frame, &CoefficientVector { values: g })
}

/// Weighted residual `||g - T f||` used to compare candidate reconstructions.
pub fn coefficient_misfit(frame: &FrameSystem, partial: &[(usize, C64)], f: &[C64]) -> f64 {
    let tf = match analyze(frame, f) {
        Ok(c) => c.values,
        Err(_) => return f64::INFINITY,
    };
    let mut g = vec![C64::new(0.0, 0.0); frame.len()];
    for &(i, v) in partial {
        if i < g.len() {
            g[i] = v;
        }
    }
    g.iter()
        .zip(&tf)
        .zip(&frame.weights)
        .map(|((a, b), &w)| w * (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
