use crate::{WftError, C64};

/// Uniform time grid `t_i = t0 + i dt`, `i < n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub dt: f64,
    pub n: usize,
}

impl TimeGrid {
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }
}

/// Complex samples on a uniform time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    samples: Vec<C64>,
    t0: f64,
    dt: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<C64>, t0: f64, dt: f64) -> Result<Self, WftError> {
        if samples.is_empty() {
            return Err(WftError::Invalid("signal has no samples".into()));
        }
        if !(dt > 0.0) || !dt.is_finite() || !t0.is_finite() {
            return Err(WftError::Invalid(format!("bad grid t0 = {t0}, dt = {dt}")));
        }
        Ok(SampledSignal { samples, t0, dt })
    }

    pub fn from_fn<F: Fn(f64) -> C64>(grid: TimeGrid, f: F) -> Result<Self, WftError> {
        let samples = (0..grid.n).map(|i| f(grid.time(i))).collect();
        Self::new(samples, grid.t0, grid.dt)
    }

    pub fn zeros(grid: TimeGrid) -> Result<Self, WftError> {
        Self::new(vec![C64::new(0.0, 0.0); grid.n], grid.t0, grid.dt)
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<C64> {
        self.samples
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid { t0: self.t0, dt: self.dt, n: self.samples.len() }
    }

    /// `||f||^2 = dt sum |f|^2`.
    pub fn energy(&self) -> f64 {
        self.dt * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// `||self - other|| / ||other||` over the common length.
    pub fn relative_l2_distance(&self, other: &SampledSignal) -> f64 {
        let num: f64 = self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = other.samples.iter().map(|z| z.norm_sqr()).sum();
        if den == 0.0 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }
}
