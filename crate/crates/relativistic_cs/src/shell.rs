use crate::{finite, positive, RelError, C64};

/// Mass shell `p^2 = (mc)^2` in `s` space dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassShell {
    m: f64,
    s: usize,
    c: f64,
}

impl MassShell {
    pub fn new(m: f64, s: usize) -> Result<Self, RelError> {
        positive("m", m)?;
        if s == 0 {
            return Err(RelError::Dimension(s));
        }
        Ok(Self { m, s, c: 1.0 })
    }

    pub fn with_speed(self, c: f64) -> Result<Self, RelError> {
        positive("c", c)?;
        Ok(Self { c, ..self })
    }

    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.s
    }

    pub fn speed(&self) -> f64 {
        self.c
    }

    /// `nu = (s - 1) / 2`.
    pub fn nu(&self) -> f64 {
        (self.s as f64 - 1.0) / 2.0
    }

    /// `mc`, the mass in momentum units.
    pub fn mc(&self) -> f64 {
        self.m * self.c
    }

    /// `omega = sqrt((mc)^2 + |p|^2)`.
    pub fn omega(&self, p: &[f64]) -> f64 {
        (self.mc().powi(2) + p.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// Scales the time component of a spacetime vector by `c`.
    pub(crate) fn covariant(&self, v: &[f64]) -> Result<Vec<f64>, RelError> {
        if v.len() != self.s + 1 {
            return Err(RelError::Length { expected: self.s + 1, got: v.len() });
        }
        let mut out = v.to_vec();
        out[0] *= self.c;
        finite(&out)?;
        Ok(out)
    }

    /// `lambda = sqrt(y^2)` for a forward `y`; an error otherwise.
    pub fn forward_lambda(&self, y: &[f64]) -> Result<f64, RelError> {
        let yc = self.covariant(y)?;
        let l2 = minkowski(&yc, &yc);
        if yc[0] > 0.0 && l2 > 0.0 {
            Ok(l2.sqrt())
        } else {
            Err(RelError::NotForward)
        }
    }
}

/// `a^0 b^0 - a . b`.
pub fn minkowski(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(u, v)| u * v).sum::<f64>()
}

/// Lowers the index with `g = diag(1, -1, ..., -1)`.
pub fn lower(v: &[f64]) -> Vec<f64> {
    v.iter().enumerate().map(|(i, x)| if i == 0 { *x } else { -x }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TubeRegion {
    Forward,
    Backward,
    Outside,
}

/// A point `z = x - iy` of complex spacetime. The time components are in
/// time units and get multiplied by `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct TubePoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl TubePoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, RelError> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(RelError::Length { expected: x.len().max(2), got: y.len() });
        }
        finite(&x)?;
        finite(&y)?;
        Ok(Self { x, y })
    }

    pub fn region(&self, c: f64) -> TubeRegion {
        let space: f64 = self.y[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if space < c * self.y[0] {
            TubeRegion::Forward
        } else if space < -c * self.y[0] {
            TubeRegion::Backward
        } else {
            TubeRegion::Outside
        }
    }

    /// `sqrt(c^2 (y^0)^2 - |y|^2)` when `y` is timelike.
    pub fn lambda(&self, c: f64) -> Option<f64> {
        let space: f64 = self.y[1..].iter().map(|v| v * v).sum();
        let l2 = (c * self.y[0]).powi(2) - space;
        (l2 > 0.0).then(|| l2.sqrt())
    }

    /// Complex components `x - iy` with the time component scaled by `c`.
    pub fn components(&self, c: f64) -> Vec<C64> {
        let mut z: Vec<C64> = self.x.iter().zip(&self.y).map(|(a, b)| C64::new(*a, -b)).collect();
        z[0] *= c;
        z
    }
}
