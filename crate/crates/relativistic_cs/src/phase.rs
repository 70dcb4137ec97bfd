//! Phase-space integrals over `sigma_{t,lambda}` for one space dimension.

use std::f64::consts::PI;

use crate::kernel::measure_constant;
use crate::shell::{MassShell, TubePoint};
use crate::{positive, RelError, C64};

/// Largest boundary value of a phase-space integrand, relative to its peak,
/// accepted before the grid counts as truncated.
pub const TAIL_TOL: f64 = 1e-10;

/// Uniform grid `start + i * step`, `i < n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub start: f64,
    pub step: f64,
    pub n: usize,
}

impl Line {
    pub fn new(start: f64, step: f64, n: usize) -> Result<Self, RelError> {
        if !(start.is_finite() && step > 0.0 && step.is_finite()) || n < 2 {
            return Err(RelError::Grid(format!("bad line start={start} step={step} n={n}")));
        }
        Ok(Self { start, step, n })
    }

    /// `[-half, half]` with the given step.
    pub fn symmetric(half: f64, step: f64) -> Result<Self, RelError> {
        Self::new(-half, step, (2.0 * half / step).round() as usize + 1)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    fn weights(&self) -> Vec<f64> {
        quadrature::trapezoid_weights(self.n, self.step)
    }
}

/// Tensor grid on `(x, y)` for `s = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseGrid {
    pub x: Line,
    pub y: Line,
}

/// Samples of `a(p)` on a momentum line, `s = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumWavefunction {
    shell: MassShell,
    grid: Line,
    values: Vec<C64>,
}

impl MomentumWavefunction {
    pub fn new(shell: MassShell, grid: Line, values: Vec<C64>) -> Result<Self, RelError> {
        if shell.dim() != 1 {
            return Err(RelError::Unsupported(format!("sampled wave functions need s = 1, got {}", shell.dim())));
        }
        if values.len() != grid.n {
            return Err(RelError::Length { expected: grid.n, got: values.len() });
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(RelError::NonFinite);
        }
        Ok(Self { shell, grid, values })
    }

    pub fn from_fn(shell: MassShell, grid: Line, f: impl Fn(f64) -> C64) -> Result<Self, RelError> {
        Self::new(shell, grid, grid.points().into_iter().map(f).collect())
    }

    /// `e_z(p) = exp(i conj(z) p)`.
    pub fn coherent(shell: MassShell, grid: Line, z: &TubePoint) -> Result<Self, RelError> {
        let zc = z.components(shell.speed());
        if zc.len() != 2 {
            return Err(RelError::Length { expected: 2, got: zc.len() });
        }
        Self::from_fn(shell, grid, |p| {
            let w = shell.omega(&[p]);
            (C64::i() * (zc[0].conj() * w - zc[1].conj() * p)).exp()
        })
    }

    pub fn shell(&self) -> &MassShell {
        &self.shell
    }

    pub fn grid(&self) -> Line {
        self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `int dp~ conj(a) b`.
    pub fn inner(&self, other: &Self) -> Result<C64, RelError> {
        if self.grid != other.grid || self.shell != other.shell {
            return Err(RelError::Grid("wave functions live on different grids".into()));
        }
        Ok(self
            .measure_weights()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(w, (a, b))| a.conj() * b * *w)
            .sum())
    }

    /// `||a||^2` in `L^2_+(dp~)`.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self).map(|v| v.re).unwrap_or(f64::NAN)
    }

    /// `f(z) = int dp~ exp(-izp) a(p)`.
    pub fn eval(&self, z: &TubePoint) -> Result<C64, RelError> {
        let zc = z.components(self.shell.speed());
        if zc.len() != 2 {
            return Err(RelError::Length { expected: 2, got: zc.len() });
        }
        Ok(self
            .grid
            .points()
            .iter()
            .zip(self.measure_weights())
            .zip(&self.values)
            .map(|((&p, w), a)| {
                let om = self.shell.omega(&[p]);
                (-C64::i() * (zc[0] * om - zc[1] * p)).exp() * a * w
            })
            .sum())
    }

    /// Trapezoid weights times `(2 pi)^{-1} (2 omega)^{-1}`.
    fn measure_weights(&self) -> Vec<f64> {
        self.grid
            .weights()
            .iter()
            .zip(self.grid.points())
            .map(|(w, p)| w / (4.0 * PI * self.shell.omega(&[p])))
            .collect()
    }
}

/// `exp(i x p)` for every grid `x` (rows) and momentum `p` (columns).
struct Plane {
    nx: usize,
    np: usize,
    table: Vec<C64>,
}

impl Plane {
    fn new(x: &Line, p: &Line) -> Self {
        let mut table = Vec::with_capacity(x.n * p.n);
        for xi in x.points() {
            for pj in p.points() {
                table.push(C64::cis(xi * pj));
            }
        }
        Self { nx: x.n, np: p.n, table }
    }

    fn apply(&self, g: &[C64], out: &mut [C64]) {
        for (i, o) in out.iter_mut().enumerate().take(self.nx) {
            let row = &self.table[i * self.np..(i + 1) * self.np];
            *o = row.iter().zip(g).map(|(e, v)| e * v).sum();
        }
    }
}

/// `|f(x - iy)|^2` on `sigma_{t,lambda}` at every `(y, x)` node.
fn intensity(f: &MomentumWavefunction, lambda: f64, t: f64, grid: &PhaseGrid) -> Vec<Vec<f64>> {
    let plane = Plane::new(&grid.x, &f.grid);
    let ps = f.grid.points();
    let mw = f.measure_weights();
    let ct = f.shell.speed() * t;
    let mut g = vec![C64::new(0.0, 0.0); ps.len()];
    let mut row = vec![C64::new(0.0, 0.0); grid.x.n];
    grid.y
        .points()
        .iter()
        .map(|&y| {
            let y0 = (lambda * lambda + y * y).sqrt();
            for (j, &p) in ps.iter().enumerate() {
                let om = f.shell.omega(&[p]);
                g[j] = f.values[j] * mw[j] * C64::new(-y0 * om + y * p, -ct * om).exp();
            }
            plane.apply(&g, &mut row);
            row.iter().map(|v| v.norm_sqr()).collect()
        })
        .collect()
}

fn boundary_tail(rows: &[Vec<f64>]) -> f64 {
    let peak = rows.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    if peak == 0.0 {
        return 0.0;
    }
    let last = rows.len() - 1;
    let mut edge = 0.0f64;
    for (i, r) in rows.iter().enumerate() {
        if i == 0 || i == last {
            edge = r.iter().fold(edge, |a, &b| a.max(b));
        } else {
            edge = edge.max(r[0]).max(r[r.len() - 1]);
        }
    }
    edge / peak
}

fn check_tail(tail: f64) -> Result<(), RelError> {
    if tail > TAIL_TOL {
        Err(RelError::Truncation { tail })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseNorm {
    pub value: f64,
    /// Boundary integrand over its peak.
    pub tail: f64,
}

/// `||f||_sigma^2 = A_lambda^{-1} int dx dy |f(x - iy)|^2` over `sigma_{t,lambda}`.
pub fn phase_space_norm(f: &MomentumWavefunction, lambda: f64, t: f64, grid: &PhaseGrid) -> Result<PhaseNorm, RelError> {
    positive("lambda", lambda)?;
    let rows = intensity(f, lambda, t, grid);
    let tail = boundary_tail(&rows);
    check_tail(tail)?;
    let wx = grid.x.weights();
    let wy = grid.y.weights();
    let total: f64 = rows.iter().zip(&wy).map(|(r, wy)| wy * r.iter().zip(&wx).map(|(v, w)| v * w).sum::<f64>()).sum();
    Ok(PhaseNorm { value: total / measure_constant(&f.shell, lambda)?, tail })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurrentReport {
    pub x: Vec<f64>,
    pub j0: Vec<f64>,
    pub j1: Vec<f64>,
    /// `d_mu J^mu` at interior `x` nodes (endpoints are zero).
    pub divergence: Vec<f64>,
    /// Largest divergence over the largest single term.
    pub defect: f64,
    /// `int dx J^0`.
    pub flux: f64,
    pub tail: f64,
}

fn currents(f: &MomentumWavefunction, lambda: f64, t: f64, grid: &PhaseGrid) -> (Vec<f64>, Vec<f64>, f64) {
    let a = measure_constant(&f.shell, lambda).unwrap_or(f64::NAN);
    let rows = intensity(f, lambda, t, grid);
    let wy = grid.y.weights();
    let ys = grid.y.points();
    let mut j0 = vec![0.0; grid.x.n];
    let mut j1 = vec![0.0; grid.x.n];
    for ((r, w), y) in rows.iter().zip(&wy).zip(&ys) {
        let v = y / (lambda * lambda + y * y).sqrt();
        for (i, q) in r.iter().enumerate() {
            j0[i] += w * q / a;
            j1[i] += w * v * q / a;
        }
    }
    (j0, j1, boundary_tail(&rows))
}

/// Probability current `J^mu(t, x)` and its finite-difference divergence,
/// using a time step `h` (time units).
pub fn current_density(f: &MomentumWavefunction, lambda: f64, t: f64, grid: &PhaseGrid, h: f64) -> Result<CurrentReport, RelError> {
    positive("lambda", lambda)?;
    positive("h", h)?;
    let (j0, j1, tail) = currents(f, lambda, t, grid);
    check_tail(tail)?;
    let (before, _, _) = currents(f, lambda, t - h, grid);
    let (after, _, _) = currents(f, lambda, t + h, grid);
    let dt = 2.0 * h * f.shell.speed();
    let dx = 2.0 * grid.x.step;
    let n = grid.x.n;
    let mut divergence = vec![0.0; n];
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for i in 1..n - 1 {
        let d0 = (after[i] - before[i]) / dt;
        let d1 = (j1[i + 1] - j1[i - 1]) / dx;
        divergence[i] = d0 + d1;
        worst = worst.max(divergence[i].abs());
        scale = scale.max(d0.abs()).max(d1.abs());
    }
    let defect = if scale > 0.0 { worst / scale } else { 0.0 };
    let flux = grid.x.weights().iter().zip(&j0).map(|(w, v)| w * v).sum();
    Ok(CurrentReport { x: grid.x.points(), j0, j1, divergence, defect, flux, tail })
}

/// `J(c) = || 2mc e^{i tau m c^2} f_c - e^{-m y^2 / 2u} f_NR ||^2` over the
/// phase-space grid, one value per speed in `cs`, with `tau = t - iu`.
pub fn nonrel_limit_defect(
    p: Line,
    fhat: &[C64],
    m: f64,
    u: f64,
    t: f64,
    cs: &[f64],
    grid: &PhaseGrid,
) -> Result<Vec<f64>, RelError> {
    positive("m", m)?;
    positive("u", u)?;
    if fhat.len() != p.n {
        return Err(RelError::Length { expected: p.n, got: fhat.len() });
    }
    for &c in cs {
        positive("c", c)?;
    }
    let plane = Plane::new(&grid.x, &p);
    let ps = p.points();
    let pw: Vec<f64> = p.weights().iter().map(|w| w / (2.0 * PI)).collect();
    let wx = grid.x.weights();
    let wy = grid.y.weights();
    let ys = grid.y.points();
    let mut g = vec![C64::new(0.0, 0.0); ps.len()];
    let mut row = vec![C64::new(0.0, 0.0); grid.x.n];

    // truncation check on the limiting field
    let nr: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| {
            for (j, &q) in ps.iter().enumerate() {
                g[j] = fhat[j] * pw[j] * nr_factor(m, u, t, y, q);
            }
            plane.apply(&g, &mut row);
            row.iter().map(|v| v.norm_sqr()).collect()
        })
        .collect();
    check_tail(boundary_tail(&nr))?;

    let mut out = Vec::with_capacity(cs.len());
    for &c in cs {
        let (lambda, mc) = (u * c, m * c);
        let mut total = 0.0;
        for (&y, wyk) in ys.iter().zip(&wy) {
            let y0 = (lambda * lambda + y * y).sqrt();
            for (j, &q) in ps.iter().enumerate() {
                let om = (mc * mc + q * q).sqrt();
                let damp = -(lambda * lambda * q * q + mc * mc * y * y + y * y * q * q) / (lambda * mc + y0 * om);
                let phase = -t * c * q * q / (om + mc);
                let rel = C64::new((mc / om).ln() + damp + y * q, phase).exp();
                g[j] = fhat[j] * pw[j] * (rel - nr_factor(m, u, t, y, q));
            }
            plane.apply(&g, &mut row);
            total += wyk * row.iter().zip(&wx).map(|(v, w)| v.norm_sqr() * w).sum::<f64>();
        }
        out.push(total);
    }
    Ok(out)
}

/// `exp(-i tau p^2/2m - m y^2/2u + y p)`.
fn nr_factor(m: f64, u: f64, t: f64, y: f64, p: f64) -> C64 {
    C64::new(-u * p * p / (2.0 * m) - m * y * y / (2.0 * u) + y * p, -t * p * p / (2.0 * m)).exp()
}
