//! Uniform grids, sampled signals, warped frequency lattices and the discrete
//! integrals used to approximate continuous inner products and Lp norms.
//!
//! Every integral is a Riemann sum `vol · Σ_k` taken sequentially in row-major
//! order, so results are reproducible bit for bit.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftDirection;

use crate::error::{Error, Result};
use crate::fft::fft_nd;
use crate::symplectic::Block;

/// A point in at most two dimensions; only the first `n` entries are used.
pub type Point = [f64; 2];

/// Uniform grid `x_k = o + k∘Δ`, `k_j ∈ [0, N_j)`, stored row-major (axis 0 slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    counts: Vec<usize>,
    spacing: Vec<f64>,
    origin: Vec<f64>,
}

impl Grid {
    pub fn new(counts: Vec<usize>, spacing: Vec<f64>, origin: Vec<f64>) -> Result<Self> {
        let n = counts.len();
        if !(n == 1 || n == 2) {
            return Err(Error::DimensionError(format!("grid dimension {n} not in {{1, 2}}")));
        }
        if spacing.len() != n || origin.len() != n {
            return Err(Error::DimensionError("counts, spacing and origin lengths differ".into()));
        }
        for j in 0..n {
            if counts[j] < 8 || !counts[j].is_power_of_two() {
                return Err(Error::BadParam(format!(
                    "axis {j}: count {} must be a power of two >= 8",
                    counts[j]
                )));
            }
            if !(spacing[j] > 0.0 && spacing[j].is_finite()) {
                return Err(Error::BadParam(format!("axis {j}: spacing {} must be > 0", spacing[j])));
            }
            if !origin[j].is_finite() {
                return Err(Error::BadParam(format!("axis {j}: origin is not finite")));
            }
        }
        Ok(Grid { counts, spacing, origin })
    }

    /// Origin-centred grid, `o_j = −N_j Δ_j / 2`.
    pub fn centered(counts: Vec<usize>, spacing: Vec<f64>) -> Result<Self> {
        let origin = counts
            .iter()
            .zip(&spacing)
            .map(|(&c, &d)| -(c as f64) * d / 2.0)
            .collect();
        Self::new(counts, spacing, origin)
    }

    /// Centred grid whose spacing equals its FFT frequency step, `Δ = √(2π/N)`.
    pub fn self_dual(n: usize, count: usize) -> Result<Self> {
        let d = (2.0 * PI / count as f64).sqrt();
        Self::centered(vec![count; n], vec![d; n])
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }
    pub fn origin(&self) -> &[f64] {
        &self.origin
    }
    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Multi-index of flat index `k`.
    pub fn unravel(&self, k: usize) -> [usize; 2] {
        match self.dim() {
            1 => [k, 0],
            _ => [k / self.counts[1], k % self.counts[1]],
        }
    }

    pub fn ravel(&self, idx: [usize; 2]) -> usize {
        match self.dim() {
            1 => idx[0],
            _ => idx[0] * self.counts[1] + idx[1],
        }
    }

    pub fn point(&self, k: usize) -> Point {
        let idx = self.unravel(k);
        let mut x = [0.0; 2];
        for j in 0..self.dim() {
            x[j] = self.origin[j] + idx[j] as f64 * self.spacing[j];
        }
        x
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }

    /// FFT frequency step `2π / (N_j Δ_j)` on axis `j`.
    pub fn frequency_step(&self, j: usize) -> f64 {
        2.0 * PI / (self.counts[j] as f64 * self.spacing[j])
    }

    /// Half-open extent `[o_j, o_j + N_j Δ_j)` of axis `j`.
    pub fn extent(&self, j: usize) -> (f64, f64) {
        (self.origin[j], self.origin[j] + self.counts[j] as f64 * self.spacing[j])
    }
}

/// Complex samples on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::BadParam(format!("sample {k} is not finite")));
        }
        Ok(SampledSignal { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); grid.len()];
        SampledSignal { grid, values }
    }

    /// Sample a function of position.
    pub fn from_fn(grid: Grid, f: impl Fn(Point) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        SampledSignal { grid: self.grid.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `a·self + b·other` on a shared grid.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(SampledSignal { grid: self.grid.clone(), values })
    }
}

pub(crate) fn same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!("{a:?} vs {b:?}")))
    }
}

/// The FFT frequency lattice of a signal grid, mapped through `L`:
/// `w = L·ω`, `ω_j = 2π m_j / (N_j Δ_j)`, `m_j ∈ [−N_j/2, N_j/2)`.
///
/// Points are stored in centred order: flat index `i` has `m = unravel(i) − N/2`,
/// so `w = 0` sits at multi-index `N/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpedGrid {
    signal_grid: Grid,
    map: Block,
}

impl WarpedGrid {
    pub fn new(signal_grid: Grid, map: Block) -> Result<Self> {
        if map.dim() != signal_grid.dim() {
            return Err(Error::DimensionError(format!(
                "warp is {}x{0} but grid is {}-D",
                map.dim(),
                signal_grid.dim()
            )));
        }
        if !(map.det().abs() > 0.0) || !map.is_finite() {
            return Err(Error::BadParam("warp matrix must be invertible".into()));
        }
        Ok(WarpedGrid { signal_grid, map })
    }

    pub fn signal_grid(&self) -> &Grid {
        &self.signal_grid
    }
    pub fn map(&self) -> &Block {
        &self.map
    }
    pub fn dim(&self) -> usize {
        self.signal_grid.dim()
    }
    pub fn len(&self) -> usize {
        self.signal_grid.len()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Signed lattice index `m` of flat index `i`.
    pub fn lattice_index(&self, i: usize) -> [i64; 2] {
        let idx = self.signal_grid.unravel(i);
        let mut m = [0i64; 2];
        for j in 0..self.dim() {
            m[j] = idx[j] as i64 - (self.signal_grid.counts()[j] / 2) as i64;
        }
        m
    }

    /// Unwarped FFT frequency `ω` at flat index `i`.
    pub fn omega(&self, i: usize) -> Point {
        let m = self.lattice_index(i);
        let mut w = [0.0; 2];
        for j in 0..self.dim() {
            w[j] = m[j] as f64 * self.signal_grid.frequency_step(j);
        }
        w
    }

    /// Warped point `w = L·ω`.
    pub fn point(&self, i: usize) -> Point {
        self.map.apply(&self.omega(i))
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Flat index of the zero-frequency cell.
    pub fn zero_index(&self) -> usize {
        let c = self.signal_grid.counts();
        self.signal_grid.ravel([c[0] / 2, if self.dim() == 2 { c[1] / 2 } else { 0 }])
    }

    /// `|det L| · Π 2π/(N_j Δ_j)`.
    pub fn cell_volume(&self) -> f64 {
        let base: f64 = (0..self.dim()).map(|j| self.signal_grid.frequency_step(j)).product();
        self.map.det().abs() * base
    }
}

/// Transform values on a [`WarpedGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    wgrid: WarpedGrid,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(wgrid: WarpedGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != wgrid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a lattice of {} points",
                values.len(),
                wgrid.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::BadParam("spectrum has non-finite values".into()));
        }
        Ok(Spectrum { wgrid, values })
    }

    pub fn wgrid(&self) -> &WarpedGrid {
        &self.wgrid
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Reinterpret the spectrum as a signal on its own (uniform) lattice.
    ///
    /// Only possible for a diagonal warp. Axes with a negative warp entry run
    /// backwards and are reversed so the resulting grid has positive spacing.
    pub fn to_signal(&self) -> Result<SampledSignal> {
        let map = self.wgrid.map();
        if !map.is_diagonal() {
            return Err(Error::GridMismatch("only a diagonal warp gives a uniform lattice".into()));
        }
        let g = self.wgrid.signal_grid();
        let n = g.dim();
        let mut spacing = vec![0.0; n];
        let mut origin = vec![0.0; n];
        let mut flip = [false; 2];
        for j in 0..n {
            let l = map.get(j, j);
            let step = g.frequency_step(j);
            let half = (g.counts()[j] / 2) as f64;
            spacing[j] = l.abs() * step;
            if l > 0.0 {
                origin[j] = -half * l * step;
            } else {
                flip[j] = true;
                origin[j] = (half - 1.0) * l * step;
            }
        }
        let grid = Grid::new(g.counts().to_vec(), spacing, origin)?;
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        for (k, v) in values.iter_mut().enumerate() {
            let mut idx = grid.unravel(k);
            for j in 0..n {
                if flip[j] {
                    idx[j] = g.counts()[j] - 1 - idx[j];
                }
            }
            *v = self.values[g.ravel(idx)];
        }
        SampledSignal::new(grid, values)
    }
}

/// Window shift positions `u = d∘Δ` with integer offsets
/// `d_j ∈ {−N_j/2, −N_j/2 + s, …}` (`N_j / s` per axis).
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftLattice {
    grid: Grid,
    stride: usize,
}

impl ShiftLattice {
    pub fn new(grid: Grid, stride: usize) -> Result<Self> {
        if stride == 0 || grid.counts().iter().any(|&c| c % stride != 0) {
            return Err(Error::BadParam(format!(
                "stride {stride} must be >= 1 and divide every axis count {:?}",
                grid.counts()
            )));
        }
        Ok(ShiftLattice { grid, stride })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    pub fn stride(&self) -> usize {
        self.stride
    }
    pub fn counts(&self) -> Vec<usize> {
        self.grid.counts().iter().map(|c| c / self.stride).collect()
    }
    pub fn len(&self) -> usize {
        self.counts().iter().product()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Integer sample offset of shift `r`.
    pub fn offset(&self, r: usize) -> [i64; 2] {
        let counts = self.counts();
        let idx = match counts.len() {
            1 => [r, 0],
            _ => [r / counts[1], r % counts[1]],
        };
        let mut d = [0i64; 2];
        for j in 0..counts.len() {
            d[j] = (idx[j] * self.stride) as i64 - (self.grid.counts()[j] / 2) as i64;
        }
        d
    }

    pub fn point(&self, r: usize) -> Point {
        let d = self.offset(r);
        let mut u = [0.0; 2];
        for j in 0..self.grid.dim() {
            u[j] = d[j] as f64 * self.grid.spacing()[j];
        }
        u
    }

    /// `Π s Δ_j`.
    pub fn cell_volume(&self) -> f64 {
        self.grid.spacing().iter().map(|d| d * self.stride as f64).product()
    }

    /// Flat index of the shift `u = 0`.
    pub fn zero_index(&self) -> Option<usize> {
        (0..self.len()).find(|&r| self.offset(r) == [0, 0])
    }

    /// Sample index `k − d` of the window at `x_k − u_r`, if it lies on the grid.
    pub fn shifted_index(&self, k: usize, r: usize) -> Option<usize> {
        let idx = self.grid.unravel(k);
        let d = self.offset(r);
        let mut out = [0usize; 2];
        for j in 0..self.grid.dim() {
            let i = idx[j] as i64 - d[j];
            if i < 0 || i >= self.grid.counts()[j] as i64 {
                return None;
            }
            out[j] = i as usize;
        }
        Some(self.grid.ravel(out))
    }
}

/// Short-time transform values `V(w, u)`, one row of `|wgrid|` values per shift.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    wgrid: WarpedGrid,
    shifts: ShiftLattice,
    values: Vec<Complex64>,
}

impl Gram {
    pub fn new(wgrid: WarpedGrid, shifts: ShiftLattice, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != wgrid.len() * shifts.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for {} shifts x {} frequencies",
                values.len(),
                shifts.len(),
                wgrid.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::BadParam("gram has non-finite values".into()));
        }
        Ok(Gram { wgrid, shifts, values })
    }

    pub fn wgrid(&self) -> &WarpedGrid {
        &self.wgrid
    }
    pub fn shifts(&self) -> &ShiftLattice {
        &self.shifts
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        let w = self.wgrid.len();
        &self.values[r * w..(r + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.values.chunks(self.wgrid.len())
    }

    pub fn get(&self, r: usize, i: usize) -> Complex64 {
        self.values[r * self.wgrid.len() + i]
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Gram {
            wgrid: self.wgrid.clone(),
            shifts: self.shifts.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn same_lattice(&self, other: &Gram) -> bool {
        self.wgrid == other.wgrid && self.shifts == other.shifts
    }
}

/// Anything that can be integrated: samples plus a cell volume.
pub trait Measured {
    fn samples(&self) -> &[Complex64];
    fn cell_volume(&self) -> f64;
}

impl Measured for SampledSignal {
    fn samples(&self) -> &[Complex64] {
        &self.values
    }
    fn cell_volume(&self) -> f64 {
        self.grid.cell_volume()
    }
}

impl Measured for Spectrum {
    fn samples(&self) -> &[Complex64] {
        &self.values
    }
    fn cell_volume(&self) -> f64 {
        self.wgrid.cell_volume()
    }
}

impl Measured for Gram {
    fn samples(&self) -> &[Complex64] {
        &self.values
    }
    fn cell_volume(&self) -> f64 {
        self.wgrid.cell_volume() * self.shifts.cell_volume()
    }
}

/// `⟨f, g⟩ = vol · Σ_k f_k conj(g_k)`.
pub fn inner(f: &SampledSignal, g: &SampledSignal) -> Result<Complex64> {
    same_grid(&f.grid, &g.grid)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in f.values.iter().zip(&g.values) {
        acc += a * b.conj();
    }
    Ok(acc * f.grid.cell_volume())
}

/// `(vol · Σ|f_k|^p)^{1/p}`, or `max|f_k|` for `p = ∞`.
pub fn lp_norm<M: Measured + ?Sized>(f: &M, p: f64) -> Result<f64> {
    if p == f64::INFINITY {
        return Ok(f.samples().iter().fold(0.0, |m, v| m.max(v.norm())));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::BadP(format!("p = {p} must be >= 1 or infinite")));
    }
    let vol = f.cell_volume();
    if p == 2.0 {
        let s: f64 = f.samples().iter().map(|v| v.norm_sqr()).sum();
        return Ok((vol * s).sqrt());
    }
    let s: f64 = f.samples().iter().map(|v| v.norm().powf(p)).sum();
    Ok((vol * s).powf(1.0 / p))
}

/// `vol · Σ|f_k|²`.
pub fn energy<M: Measured + ?Sized>(f: &M) -> f64 {
    f.cell_volume() * f.samples().iter().map(|v| v.norm_sqr()).sum::<f64>()
}

/// Test-signal families for [`synthesize`].
#[derive(Debug, Clone, PartialEq)]
pub enum Synth {
    /// `exp(−|x−c|²/(2σ²) + i ν·x)`, normalised to unit discrete L² norm.
    Gaussian { sigma: f64, center: Point, freq: Point },
    /// `env(x) · exp(i(ν·x + r₁|x|²/2 + r₂ Σ x_j³/3))` with optional Gaussian
    /// envelope of width `envelope` (none: unit amplitude everywhere).
    Chirp { freq: Point, linear_rate: f64, quadratic_rate: f64, envelope: Option<f64> },
    /// Complex white noise, Gaussian low-pass of width `bandwidth` (rad per unit),
    /// Gaussian spatial envelope of width `envelope`, unit discrete L² norm.
    Noise { seed: u64, bandwidth: f64, envelope: f64 },
}

pub fn synthesize(kind: &Synth, grid: &Grid) -> Result<SampledSignal> {
    let n = grid.dim();
    let dot = |a: &Point, b: &Point| (0..n).map(|j| a[j] * b[j]).sum::<f64>();
    match kind {
        Synth::Gaussian { sigma, center, freq } => {
            positive("sigma", *sigma)?;
            let s = SampledSignal::from_fn(grid.clone(), |x| {
                let r2: f64 = (0..n).map(|j| (x[j] - center[j]).powi(2)).sum();
                Complex64::from_polar((-r2 / (2.0 * sigma * sigma)).exp(), dot(freq, &x))
            })?;
            normalize(s)
        }
        Synth::Chirp { freq, linear_rate, quadratic_rate, envelope } => {
            if let Some(e) = envelope {
                positive("envelope", *e)?;
            }
            if !(linear_rate.is_finite() && quadratic_rate.is_finite()) {
                return Err(Error::BadParam("chirp rates must be finite".into()));
            }
            SampledSignal::from_fn(grid.clone(), |x| {
                let r2 = dot(&x, &x);
                let cubic: f64 = (0..n).map(|j| x[j].powi(3)).sum();
                let phase = dot(freq, &x) + linear_rate * r2 / 2.0 + quadratic_rate * cubic / 3.0;
                let amp = envelope.map_or(1.0, |e| (-r2 / (2.0 * e * e)).exp());
                Complex64::from_polar(amp, phase)
            })
        }
        Synth::Noise { seed, bandwidth, envelope } => {
            positive("bandwidth", *bandwidth)?;
            positive("envelope", *envelope)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut v: Vec<Complex64> = (0..grid.len())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            fft_nd(&mut v, grid.counts(), FftDirection::Forward);
            for (i, c) in v.iter_mut().enumerate() {
                let idx = grid.unravel(i);
                let mut w2 = 0.0;
                for (j, &ij) in idx.iter().enumerate().take(n) {
                    let nj = grid.counts()[j];
                    let m = if ij < nj / 2 { ij as f64 } else { ij as f64 - nj as f64 };
                    w2 += (m * grid.frequency_step(j)).powi(2);
                }
                *c *= (-w2 / (2.0 * bandwidth * bandwidth)).exp();
            }
            fft_nd(&mut v, grid.counts(), FftDirection::Inverse);
            for (k, c) in v.iter_mut().enumerate() {
                let x = grid.point(k);
                *c *= (-dot(&x, &x) / (2.0 * envelope * envelope)).exp();
            }
            normalize(SampledSignal::new(grid.clone(), v)?)
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::BadParam(format!("{name} = {v} must be positive and finite")))
    }
}

fn normalize(s: SampledSignal) -> Result<SampledSignal> {
    let norm = lp_norm(&s, 2.0)?;
    if norm == 0.0 {
        return Err(Error::BadParam("signal vanishes on the grid".into()));
    }
    Ok(s.scaled(Complex64::new(1.0 / norm, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_gaussian(grid: &Grid) -> SampledSignal {
        let a = PI.powf(-0.25);
        SampledSignal::from_fn(grid.clone(), |x| c(a * (-(x[0] * x[0]) / 2.0).exp(), 0.0)).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::centered(vec![6], vec![0.1]).is_err());
        assert!(Grid::centered(vec![12], vec![0.1]).is_err());
        assert!(Grid::centered(vec![8], vec![0.0]).is_err());
        assert!(Grid::centered(vec![8, 8, 8], vec![0.1; 3]).is_err());
        let g = Grid::centered(vec![8, 16], vec![0.5, 0.25]).unwrap();
        assert_eq!(g.len(), 128);
        assert_eq!(g.cell_volume(), 0.125);
        assert_eq!(g.origin(), &[-2.0, -2.0]);
        assert_eq!(g.ravel(g.unravel(37)), 37);
    }

    #[test]
    fn inner_of_constants() {
        let g = Grid::centered(vec![8], vec![0.5]).unwrap();
        let one = SampledSignal::from_fn(g, |_| c(1.0, 0.0)).unwrap();
        assert_eq!(inner(&one, &one).unwrap(), c(4.0, 0.0));
    }

    #[test]
    fn inner_rejects_mismatched_grids() {
        let a = SampledSignal::zeros(Grid::centered(vec![8], vec![0.5]).unwrap());
        let b = SampledSignal::zeros(Grid::centered(vec![8], vec![0.25]).unwrap());
        assert!(matches!(inner(&a, &b), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn gaussian_norm_and_peak() {
        let g = Grid::centered(vec![256], vec![0.1]).unwrap();
        let f = unit_gaussian(&g);
        // ∫ π^{-1/2} e^{-x²} dx = 1
        assert!((inner(&f, &f).unwrap().re - 1.0).abs() < 1e-10);
        assert!((lp_norm(&f, f64::INFINITY).unwrap() - 0.751_125_544_464_942_5).abs() < 1e-15);
        assert!((lp_norm(&f, 2.0).unwrap() - inner(&f, &f).unwrap().re.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn l1_of_indicator() {
        let g = Grid::centered(vec![16], vec![0.25]).unwrap();
        let f = SampledSignal::from_fn(g, |x| if (0.0..1.0).contains(&x[0]) { c(1.0, 0.0) } else { c(0.0, 0.0) })
            .unwrap();
        assert_eq!(lp_norm(&f, 1.0).unwrap(), 1.0);
        assert!(lp_norm(&f, 0.5).is_err());
    }

    #[test]
    fn synthesized_gaussian_peak() {
        let g = Grid::centered(vec![256], vec![0.1]).unwrap();
        let f = synthesize(&Synth::Gaussian { sigma: 1.0, center: [0.0; 2], freq: [0.0; 2] }, &g).unwrap();
        let peak = f.values()[128];
        assert!((peak.re - PI.powf(-0.25)).abs() < 1e-12);
        assert!(synthesize(&Synth::Gaussian { sigma: 0.0, center: [0.0; 2], freq: [0.0; 2] }, &g).is_err());
    }

    #[test]
    fn zero_rate_chirp_is_tone() {
        let g = Grid::centered(vec![64], vec![0.1]).unwrap();
        let kind = Synth::Chirp { freq: [2.0, 0.0], linear_rate: 0.0, quadratic_rate: 0.0, envelope: None };
        let f = synthesize(&kind, &g).unwrap();
        for (k, v) in f.values().iter().enumerate() {
            let x = g.point(k)[0];
            assert!((v - Complex64::from_polar(1.0, 2.0 * x)).norm() < 1e-15);
        }
    }

    #[test]
    fn noise_is_deterministic() {
        let g = Grid::centered(vec![32, 32], vec![0.3, 0.3]).unwrap();
        let kind = Synth::Noise { seed: 7, bandwidth: 2.0, envelope: 2.0 };
        let a = synthesize(&kind, &g).unwrap();
        let b = synthesize(&kind, &g).unwrap();
        assert_eq!(a, b);
        assert!((lp_norm(&a, 2.0).unwrap() - 1.0).abs() < 1e-14);
        let other = synthesize(&Synth::Noise { seed: 8, bandwidth: 2.0, envelope: 2.0 }, &g).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn fourier_warp_is_plain_lattice() {
        let g = Grid::centered(vec![16, 8], vec![0.2, 0.4]).unwrap();
        let w = WarpedGrid::new(g.clone(), Block::identity(2)).unwrap();
        for i in 0..w.len() {
            assert_eq!(w.point(i), w.omega(i));
        }
        assert_eq!(w.point(w.zero_index()), [0.0, 0.0]);
        assert_eq!(w.point(0), [-8.0 * g.frequency_step(0), -4.0 * g.frequency_step(1)]);
    }

    #[test]
    fn shift_lattice_offsets() {
        let g = Grid::centered(vec![16], vec![0.5]).unwrap();
        assert!(ShiftLattice::new(g.clone(), 3).is_err());
        let s = ShiftLattice::new(g, 4).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.offset(0), [-8, 0]);
        assert_eq!(s.offset(2), [0, 0]);
        assert_eq!(s.zero_index(), Some(2));
        assert_eq!(s.cell_volume(), 2.0);
        assert_eq!(s.shifted_index(8, 2), Some(8));
        assert_eq!(s.shifted_index(15, 0), None);
        assert_eq!(s.shifted_index(0, 3), None);
    }

    #[test]
    fn negative_warp_reverses_axis() {
        let g = Grid::centered(vec![8], vec![0.5]).unwrap();
        let w = WarpedGrid::new(g, Block::scalar(1, -2.0)).unwrap();
        let values: Vec<_> = (0..8).map(|i| c(i as f64, 0.0)).collect();
        let s = Spectrum::new(w.clone(), values).unwrap().to_signal().unwrap();
        for k in 0..8 {
            let x = s.grid().point(k)[0];
            let i = s.values()[k].re as usize;
            assert!((w.point(i)[0] - x).abs() < 1e-12);
        }
    }

    fn arb_signal(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), len)
    }

    proptest! {
        #[test]
        fn inner_is_conjugate_symmetric(a in arb_signal(16), b in arb_signal(16)) {
            let g = Grid::centered(vec![16], vec![0.3]).unwrap();
            let f = SampledSignal::new(g.clone(), a.iter().map(|&(r, i)| c(r, i)).collect()).unwrap();
            let h = SampledSignal::new(g, b.iter().map(|&(r, i)| c(r, i)).collect()).unwrap();
            let d = inner(&f, &h).unwrap() - inner(&h, &f).unwrap().conj();
            prop_assert!(d.norm() <= 1e-15 * (1.0 + inner(&f, &h).unwrap().norm()));
        }

        #[test]
        fn inner_is_sesquilinear(a in arb_signal(16), b in arb_signal(16), h in arb_signal(16),
                                 s in (-2.0..2.0f64, -2.0..2.0f64), t in (-2.0..2.0f64, -2.0..2.0f64)) {
            let g = Grid::centered(vec![16], vec![0.3]).unwrap();
            let mk = |v: &Vec<(f64, f64)>| SampledSignal::new(g.clone(), v.iter().map(|&(r, i)| c(r, i)).collect()).unwrap();
            let (f1, f2, f3) = (mk(&a), mk(&b), mk(&h));
            let (s, t) = (c(s.0, s.1), c(t.0, t.1));
            let lhs = inner(&f1.combine(s, &f2, t).unwrap(), &f3).unwrap();
            let rhs = s * inner(&f1, &f3).unwrap() + t * inner(&f2, &f3).unwrap();
            let scale = inner(&f1, &f1).unwrap().re.sqrt() * inner(&f3, &f3).unwrap().re.sqrt() * (s.norm() + t.norm()) + 1e-300;
            prop_assert!((lhs - rhs).norm() <= 1e-13 * scale);
        }

        #[test]
        fn lp_norm_is_absolutely_homogeneous(a in arb_signal(16), cr in -4.0..4.0f64, ci in -4.0..4.0f64,
                                             p in prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(f64::INFINITY)]) {
            let g = Grid::centered(vec![16], vec![0.3]).unwrap();
            let f = SampledSignal::new(g, a.iter().map(|&(r, i)| c(r, i)).collect()).unwrap();
            let k = c(cr, ci);
            let lhs = lp_norm(&f.scaled(k), p).unwrap();
            let rhs = k.norm() * lp_norm(&f, p).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1e-300));
        }
    }
}
