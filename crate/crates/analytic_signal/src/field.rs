use num_complex::Complex64;
use rustfft::FftPlanner;
use windowed_fourier::SampledSignal;

use crate::AstError;

type C64 = Complex64;

/// Complex samples on a uniform grid in 1, 2 or 3 dimensions.
///
/// Storage is row-major with axis 0 slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSample {
    dims: Vec<usize>,
    origin: Vec<f64>,
    spacing: Vec<f64>,
    values: Vec<C64>,
}

impl FieldSample {
    pub fn new(dims: Vec<usize>, origin: Vec<f64>, spacing: Vec<f64>, values: Vec<C64>) -> Result<Self, AstError> {
        let n = dims.len();
        if !(1..=3).contains(&n) || origin.len() != n || spacing.len() != n {
            return Err(AstError::Dimension(format!(
                "grid needs 1-3 axes with matching origin/spacing, got {} / {} / {}",
                n,
                origin.len(),
                spacing.len()
            )));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(AstError::Dimension("empty axis".into()));
        }
        if spacing.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(AstError::Dimension(format!("spacings must be positive, got {spacing:?}")));
        }
        let total: usize = dims.iter().product();
        if values.len() != total {
            return Err(AstError::Dimension(format!("expected {total} values, got {}", values.len())));
        }
        Ok(FieldSample { dims, origin, spacing, values })
    }

    pub fn from_fn<F: Fn(&[f64]) -> C64>(
        dims: Vec<usize>,
        origin: Vec<f64>,
        spacing: Vec<f64>,
        f: F,
    ) -> Result<Self, AstError> {
        let total: usize = dims.iter().product();
        let probe = FieldSample { dims: dims.clone(), origin: origin.clone(), spacing: spacing.clone(), values: vec![] };
        let values = (0..total).map(|i| f(&probe.point(i))).collect();
        Self::new(dims, origin, spacing, values)
    }

    /// One-dimensional field with the samples of `s`.
    pub fn from_signal(s: &SampledSignal) -> Self {
        FieldSample {
            dims: vec![s.len()],
            origin: vec![s.t0()],
            spacing: vec![s.dt()],
            values: s.samples().to_vec(),
        }
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for d in (0..self.dims.len()).rev() {
            idx[d] = flat % self.dims[d];
            flat /= self.dims[d];
        }
        idx
    }

    /// Coordinates of the sample with flat index `flat`.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat)
            .iter()
            .enumerate()
            .map(|(d, &j)| self.origin[d] + j as f64 * self.spacing[d])
            .collect()
    }

    /// Upper corner of the bounding box.
    pub fn upper(&self) -> Vec<f64> {
        (0..self.ndim()).map(|d| self.origin[d] + (self.dims[d] - 1) as f64 * self.spacing[d]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Multilinear interpolation, zero outside the bounding box.
    pub fn interpolate(&self, x: &[f64]) -> C64 {
        let n = self.ndim();
        let mut base = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for d in 0..n {
            let u = (x[d] - self.origin[d]) / self.spacing[d];
            let last = (self.dims[d] - 1) as f64;
            // allow a rounding-level overshoot at the box faces
            if u < -1e-9 || u > last + 1e-9 {
                return C64::new(0.0, 0.0);
            }
            let u = u.clamp(0.0, last);
            let mut j = u.floor() as usize;
            if j + 1 >= self.dims[d] {
                j = self.dims[d].saturating_sub(2);
            }
            base[d] = j;
            frac[d] = if self.dims[d] == 1 { 0.0 } else { u - j as f64 };
        }
        let mut acc = C64::new(0.0, 0.0);
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            let mut flat = 0;
            for d in 0..n {
                let up = (corner >> d) & 1;
                if up == 1 && self.dims[d] == 1 {
                    w = 0.0;
                    break;
                }
                w *= if up == 1 { frac[d] } else { 1.0 - frac[d] };
                flat = flat * self.dims[d] + base[d] + up;
            }
            if w != 0.0 {
                acc += self.values[flat] * w;
            }
        }
        acc
    }

    /// Tensor-product cubic convolution (Keys, a = -1/2), zero outside the box.
    ///
    /// Neighbours past the box faces count as zero, so the field should have
    /// decayed there.
    pub fn interpolate_cubic(&self, x: &[f64]) -> C64 {
        let n = self.ndim();
        let mut base = [0i64; 3];
        let mut wts = [[0.0f64; 4]; 3];
        for d in 0..n {
            let u = (x[d] - self.origin[d]) / self.spacing[d];
            let last = (self.dims[d] - 1) as f64;
            if u < -1e-9 || u > last + 1e-9 {
                return C64::new(0.0, 0.0);
            }
            let u = u.clamp(0.0, last);
            let j = u.floor();
            let t = u - j;
            base[d] = j as i64 - 1;
            wts[d] = keys_weights(t);
        }
        let mut acc = C64::new(0.0, 0.0);
        for corner in 0..(1usize << (2 * n)) {
            let mut w = 1.0;
            let mut flat = 0usize;
            let mut inside = true;
            for d in 0..n {
                let k = (corner >> (2 * d)) & 3;
                let j = base[d] + k as i64;
                if j < 0 || j >= self.dims[d] as i64 {
                    inside = false;
                    break;
                }
                w *= wts[d][k];
                flat = flat * self.dims[d] + j as usize;
            }
            if inside && w != 0.0 {
                acc += self.values[flat] * w;
            }
        }
        acc
    }

    /// Same origin and spacing with every axis extended to `factor` times its
    /// length, the new samples zero.
    pub fn zero_padded(&self, factor: usize) -> Result<FieldSample, AstError> {
        if factor == 0 {
            return Err(AstError::Invalid("padding factor must be positive".into()));
        }
        let dims: Vec<usize> = self.dims.iter().map(|d| d * factor).collect();
        let total: usize = dims.iter().product();
        let mut values = vec![C64::new(0.0, 0.0); total];
        for (i, v) in self.values.iter().enumerate() {
            let idx = self.unravel(i);
            let flat = idx.iter().zip(&dims).fold(0, |acc, (&j, &d)| acc * d + j);
            values[flat] = *v;
        }
        Ok(FieldSample { dims, origin: self.origin.clone(), spacing: self.spacing.clone(), values })
    }

    /// Zero padding split evenly on both sides of every axis.
    pub fn zero_padded_centered(&self, factor: usize) -> Result<FieldSample, AstError> {
        let mut big = self.zero_padded(factor)?;
        let shift: Vec<usize> = self.dims.iter().map(|d| d * (factor.max(1) - 1) / 2).collect();
        let mut values = vec![C64::new(0.0, 0.0); big.values.len()];
        for (i, v) in self.values.iter().enumerate() {
            let idx = self.unravel(i);
            let flat = idx.iter().zip(&shift).zip(&big.dims).fold(0, |acc, ((&j, &s), &d)| acc * d + j + s);
            values[flat] = *v;
        }
        for d in 0..self.ndim() {
            big.origin[d] -= shift[d] as f64 * self.spacing[d];
        }
        big.values = values;
        Ok(big)
    }

    /// `||self - other|| / ||other||` sample-wise.
    pub fn relative_l2_distance(&self, other: &FieldSample) -> f64 {
        let num: f64 = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = other.values.iter().map(|v| v.norm_sqr()).sum();
        if den == 0.0 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }

    pub(crate) fn with_values(&self, values: Vec<C64>) -> FieldSample {
        FieldSample { dims: self.dims.clone(), origin: self.origin.clone(), spacing: self.spacing.clone(), values }
    }
}

fn keys_weights(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    [
        -0.5 * t3 + t2 - 0.5 * t,
        1.5 * t3 - 2.5 * t2 + 1.0,
        -1.5 * t3 + 2.0 * t2 + 0.5 * t,
        0.5 * t3 - 0.5 * t2,
    ]
}

/// Signed DFT frequency `k / (N h)` of FFT bin `k`, with the Nyquist bin negative.
pub(crate) fn bin_frequency(k: usize, n: usize, h: f64) -> f64 {
    let s = if 2 * k >= n { k as i64 - n as i64 } else { k as i64 };
    s as f64 / (n as f64 * h)
}

/// Unnormalized in-place FFT over every axis. `sign = +1` gives `sum e^{+2 pi i jk/N}`.
pub(crate) fn fft_nd(values: &mut [C64], dims: &[usize], sign: i32) {
    let mut planner = FftPlanner::<f64>::new();
    let n = dims.len();
    for axis in 0..n {
        let len = dims[axis];
        if len == 1 {
            continue;
        }
        let fft = if sign > 0 { planner.plan_fft_inverse(len) } else { planner.plan_fft_forward(len) };
        let stride: usize = dims[axis + 1..].iter().product();
        let outer: usize = dims[..axis].iter().product();
        let mut line = vec![C64::new(0.0, 0.0); len];
        for o in 0..outer {
            for inner in 0..stride {
                let start = o * len * stride + inner;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = values[start + j * stride];
                }
                fft.process(&mut line);
                for (j, v) in line.iter().enumerate() {
                    values[start + j * stride] = *v;
                }
            }
        }
    }
}

/// `f^(p) = int e^{2 pi i p.x} f(x) dx` on the DFT grid, FFT bin order.
#[derive(Clone, Debug)]
pub struct FieldSpectrum {
    pub dims: Vec<usize>,
    /// Frequencies per axis in FFT bin order.
    pub freqs: Vec<Vec<f64>>,
    pub values: Vec<C64>,
    /// Volume element of the frequency grid.
    pub dp: f64,
}

impl FieldSpectrum {
    pub fn of(f: &FieldSample) -> Self {
        let mut values = f.values.clone();
        fft_nd(&mut values, &f.dims, 1);
        let freqs: Vec<Vec<f64>> = (0..f.ndim())
            .map(|d| (0..f.dims[d]).map(|k| bin_frequency(k, f.dims[d], f.spacing[d])).collect())
            .collect();
        let vol = f.cell_volume();
        // phase from the grid origin
        let phase: Vec<Vec<C64>> = (0..f.ndim())
            .map(|d| freqs[d].iter().map(|&p| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * p * f.origin[d])).collect())
            .collect();
        let probe = f.with_values(vec![]);
        for (i, v) in values.iter_mut().enumerate() {
            let idx = probe.unravel(i);
            let mut ph = C64::new(vol, 0.0);
            for d in 0..f.ndim() {
                ph *= phase[d][idx[d]];
            }
            *v *= ph;
        }
        let dp = (0..f.ndim()).map(|d| 1.0 / (f.dims[d] as f64 * f.spacing[d])).product();
        FieldSpectrum { dims: f.dims.clone(), freqs, values, dp }
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for d in (0..self.dims.len()).rev() {
            idx[d] = flat % self.dims[d];
            flat /= self.dims[d];
        }
        idx
    }

    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat).iter().enumerate().map(|(d, &k)| self.freqs[d][k]).collect()
    }
}

/// Inverse of [`FieldSpectrum::of`] onto the grid of `like`.
pub fn inverse_spectrum(s: &FieldSpectrum, like: &FieldSample) -> FieldSample {
    let n = like.ndim();
    let mut values = s.values.clone();
    let phase: Vec<Vec<C64>> = (0..n)
        .map(|d| s.freqs[d].iter().map(|&p| C64::from_polar(1.0, -2.0 * std::f64::consts::PI * p * like.origin[d])).collect())
        .collect();
    for (i, v) in values.iter_mut().enumerate() {
        let idx = s.unravel(i);
        let mut ph = C64::new(s.dp, 0.0);
        for d in 0..n {
            ph *= phase[d][idx[d]];
        }
        *v *= ph;
    }
    fft_nd(&mut values, &s.dims, -1);
    like.with_values(values)
}
