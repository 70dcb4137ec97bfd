use nalgebra::{DMatrix, DVector};

use crate::{SpinError, C64};

/// Irreducible representation of SU(2) with spin `s = two_s / 2`.
///
/// Basis index `i` holds the weight `m = s - i`, so `v_s` comes first and
/// `v_{-s}` last.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinRep {
    two_s: usize,
}

/// Builds the representation of spin `s`; `2s` must be a positive integer.
pub fn build_rep(s: f64) -> Result<SpinRep, SpinError> {
    let two = 2.0 * s;
    if !(two.is_finite() && two >= 1.0 && (two - two.round()).abs() < 1e-12) {
        return Err(SpinError::InvalidSpin(s));
    }
    Ok(SpinRep { two_s: two.round() as usize })
}

impl SpinRep {
    pub fn from_twice(two_s: usize) -> Result<Self, SpinError> {
        if two_s == 0 {
            return Err(SpinError::InvalidSpin(0.0));
        }
        Ok(Self { two_s })
    }

    pub fn spin(&self) -> f64 {
        self.two_s as f64 / 2.0
    }

    pub fn twice_spin(&self) -> usize {
        self.two_s
    }

    pub fn dim(&self) -> usize {
        self.two_s + 1
    }

    /// Weight of basis index `i`.
    pub fn weight(&self, i: usize) -> f64 {
        self.spin() - i as f64
    }

    /// Index of the basis vector with weight `m`.
    pub fn index(&self, m: f64) -> Option<usize> {
        let i = self.spin() - m;
        let r = i.round();
        ((i - r).abs() < 1e-9 && r >= 0.0 && r <= self.two_s as f64).then_some(r as usize)
    }

    /// `S_+ v_m = sqrt((s - m)(s + m + 1)) v_{m+1}`; coefficient for index `i`.
    /// The square root argument is an exact integer product.
    pub fn raise(&self, i: usize) -> f64 {
        if i == 0 || i > self.two_s {
            return 0.0;
        }
        // s - m = i, s + m + 1 = 2s - i + 1
        ((i * (self.two_s - i + 1)) as f64).sqrt()
    }

    /// `S_- v_m = sqrt((s + m)(s - m + 1)) v_{m-1}`; coefficient for index `i`.
    pub fn lower(&self, i: usize) -> f64 {
        if i >= self.two_s {
            return 0.0;
        }
        (((self.two_s - i) * (i + 1)) as f64).sqrt()
    }

    pub fn basis(&self, i: usize) -> DVector<C64> {
        let mut v = DVector::zeros(self.dim());
        v[i] = C64::new(1.0, 0.0);
        v
    }

    /// `v_{-s}`.
    pub fn lowest(&self) -> DVector<C64> {
        self.basis(self.two_s)
    }

    pub fn s3(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| if i == j { C64::new(self.weight(i), 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn s_plus(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| if i + 1 == j { C64::new(self.raise(j), 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn s_minus(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| if j + 1 == i { C64::new(self.lower(j), 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn s1(&self) -> DMatrix<C64> {
        (self.s_plus() + self.s_minus()) * C64::new(0.5, 0.0)
    }

    pub fn s2(&self) -> DMatrix<C64> {
        (self.s_plus() - self.s_minus()) * C64::new(0.0, -0.5)
    }

    /// `S_1^2 + S_2^2 + S_3^2`.
    pub fn casimir(&self) -> DMatrix<C64> {
        let (a, b, c) = (self.s1(), self.s2(), self.s3());
        &a * &a + &b * &b + &c * &c
    }
}
