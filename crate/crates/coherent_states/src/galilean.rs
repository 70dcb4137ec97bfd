use std::f64::consts::PI;

use windowed_fourier::{SampledSignal, TimeGrid};

use crate::grid::{momentum_space_moments, same_grid, LabelGrid, Moments};
use crate::{positive, CsError, C64};

/// `e^u_z(p) = (2 pi)^{-1} exp[-u p^2/2m - i p zbar]`, `z = x - iy`.
pub fn galilean_cs(m: f64, u: f64, z: C64, p: f64) -> Result<C64, CsError> {
    galilean_evolved(m, u, 0.0, z, p)
}

/// Free evolution to time `t`: `(2 pi)^{-1} exp[i taubar p^2/2m - i p zbar]` with `tau = t - iu`.
pub fn galilean_evolved(m: f64, u: f64, t: f64, z: C64, p: f64) -> Result<C64, CsError> {
    positive("m", m)?;
    positive("u", u)?;
    let itau_bar = C64::new(-u, t);
    Ok((itau_bar * (p * p / (2.0 * m)) - C64::new(0.0, p) * z.conj()).exp() / (2.0 * PI))
}

/// Galilean coherent state with mass `m`, imaginary time `u` and label `z = x - iy`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GalileanCS {
    m: f64,
    u: f64,
    pub z: C64,
}

impl GalileanCS {
    pub fn new(m: f64, u: f64, z: C64) -> Result<Self, CsError> {
        Ok(GalileanCS { m: positive("m", m)?, u: positive("u", u)?, z })
    }

    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn imaginary_time(&self) -> f64 {
        self.u
    }

    pub fn eval(&self, p: f64) -> C64 {
        self.evolved(0.0, p)
    }

    pub fn evolved(&self, t: f64, p: f64) -> C64 {
        galilean_evolved(self.m, self.u, t, self.z, p).expect("validated")
    }

    pub fn sample(&self, t: f64, grid: TimeGrid) -> Result<SampledSignal, CsError> {
        Ok(SampledSignal::from_fn(grid, |p| self.evolved(t, p))?)
    }

    /// `<X>(t) = x - (t/m) <P>`.
    pub fn expected_position(&self, t: f64) -> f64 {
        self.z.re - t / self.m * self.expected_momentum()
    }

    /// `<P> = (m/u) y`.
    pub fn expected_momentum(&self) -> f64 {
        -self.z.im * self.m / self.u
    }

    pub fn delta_p(&self) -> f64 {
        (self.m / (2.0 * self.u)).sqrt()
    }

    /// `sqrt((u/2m)(1 + t^2/u^2))`.
    pub fn delta_x(&self, t: f64) -> f64 {
        (self.u / (2.0 * self.m) * (1.0 + t * t / (self.u * self.u))).sqrt()
    }
}

/// Density of `dmu_u(z) = (m/pi u)^{1/2} e^{-m y^2/u} dx dy`.
pub fn galilean_measure(m: f64, u: f64, z: C64) -> f64 {
    (m / (PI * u)).sqrt() * (-m * z.im * z.im / u).exp()
}

/// Quadrature moments at time `t` next to the closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolvedReport {
    pub moments: Moments,
    pub mean_x_closed: f64,
    pub delta_x_closed: f64,
}

pub fn galilean_moments(state: &GalileanCS, t: f64, grid: TimeGrid) -> Result<EvolvedReport, CsError> {
    let phi = state.sample(t, grid)?;
    Ok(EvolvedReport {
        moments: momentum_space_moments(&phi)?,
        mean_x_closed: state.expected_position(t),
        delta_x_closed: state.delta_x(t),
    })
}

/// `f_u(z) = int dp conj(e^u_z(p)) f^(p)` on the momentum grid of `fhat`.
pub fn galilean_transform(fhat: &SampledSignal, m: f64, u: f64, zs: &[C64]) -> Result<Vec<C64>, CsError> {
    positive("m", m)?;
    positive("u", u)?;
    let w = quadrature::trapezoid_weights(fhat.len(), fhat.dt());
    Ok(zs
        .iter()
        .map(|&z| {
            fhat.samples()
                .iter()
                .zip(&w)
                .enumerate()
                .map(|(i, (v, w))| galilean_cs(m, u, z, fhat.time(i)).unwrap().conj() * v * *w)
                .sum()
        })
        .collect())
}

/// `(2 pi)^{-1} int dp conj(f) g`.
pub fn momentum_inner(f: &SampledSignal, g: &SampledSignal) -> Result<C64, CsError> {
    Ok(crate::grid::inner(f, g)? / (2.0 * PI))
}

/// `max |<f|g> - int dmu_u(z) conj(f_u(z)) g_u(z)|` over all pairs of momentum-space test vectors.
pub fn galilean_resolution_check(m: f64, u: f64, grid: &LabelGrid, tests: &[SampledSignal]) -> Result<f64, CsError> {
    for t in tests {
        same_grid(&tests[0], t)?;
    }
    let tilde = tests.iter().map(|f| galilean_transform(f, m, u, &grid.points)).collect::<Result<Vec<_>, _>>()?;
    let mut worst: f64 = 0.0;
    for (i, f) in tests.iter().enumerate() {
        for (j, g) in tests.iter().enumerate() {
            let exact = momentum_inner(f, g)?;
            let approx: C64 = grid
                .points
                .iter()
                .zip(&grid.weights)
                .enumerate()
                .map(|(k, (z, w))| tilde[i][k].conj() * tilde[j][k] * (w * galilean_measure(m, u, *z)))
                .sum();
            worst = worst.max((exact - approx).norm());
        }
    }
    Ok(worst)
}
