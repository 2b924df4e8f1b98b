//! The non-separable linear canonical transform
//!
//! ```text
//! L_M[f](w) = ∫ f(x) K_M(x, w) dx,
//! K_M(x, w) = (2π)^{-n/2} |det B|^{-1/2} exp(i/2 (wᵀDB⁻¹w − 2wᵀB⁻ᵀx + xᵀB⁻¹Ax)).
//! ```
//!
//! [`nslct_direct`] sums the kernel against the samples at arbitrary points and
//! is the reference. [`nslct_fast`] factors the kernel as input chirp, FFT,
//! output chirp and returns values on the B-warped FFT lattice, where it
//! computes exactly the same Riemann sum as the direct path.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftDirection;

use crate::error::{Error, Result};
use crate::fft::fft_nd;
use crate::sampling::{Grid, Point, SampledSignal, Spectrum, WarpedGrid};
use crate::symplectic::{Block, FreeSymplecticMatrix};

/// Unimodular quadratic phase `exp(i/2 · pᵀ Q p)` sampled at a set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct ChirpField {
    values: Vec<Complex64>,
}

impl ChirpField {
    /// `exp(i xᵀB⁻¹Ax / 2)` on the signal grid.
    pub fn input(grid: &Grid, m: &FreeSymplecticMatrix) -> Self {
        Self::quadratic(grid.points(), m.b_inv_a())
    }

    /// `exp(i wᵀDB⁻¹w / 2)` on the warped lattice.
    pub fn output(wgrid: &WarpedGrid, m: &FreeSymplecticMatrix) -> Self {
        Self::quadratic(wgrid.points(), m.d_b_inv())
    }

    fn quadratic(points: impl Iterator<Item = Point>, q: &Block) -> Self {
        let values = points.map(|p| Complex64::from_polar(1.0, 0.5 * q.bilinear(&p, &p))).collect();
        ChirpField { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn kernel_amplitude(m: &FreeSymplecticMatrix) -> f64 {
    (2.0 * PI).powf(-(m.dim() as f64) / 2.0) / m.det_b().abs().sqrt()
}

fn check_dim(grid: &Grid, m: &FreeSymplecticMatrix) -> Result<()> {
    if grid.dim() != m.dim() {
        return Err(Error::DimensionError(format!(
            "signal is {}-D but matrix has n = {}",
            grid.dim(),
            m.dim()
        )));
    }
    Ok(())
}

/// `K_M(x, w)`.
pub fn kernel_eval(m: &FreeSymplecticMatrix, x: &Point, w: &Point) -> Complex64 {
    let phase = 0.5 * m.d_b_inv().bilinear(w, w) - m.b_inv_t().bilinear(w, x) + 0.5 * m.b_inv_a().bilinear(x, x);
    Complex64::from_polar(kernel_amplitude(m), phase)
}

/// Brute-force quadrature `vol · Σ_k f_k K_M(x_k, w)` at every point in `wpoints`.
pub fn nslct_direct(f: &SampledSignal, m: &FreeSymplecticMatrix, wpoints: &[Point]) -> Result<Vec<Complex64>> {
    let grid = f.grid();
    check_dim(grid, m)?;
    if wpoints.iter().any(|w| !(w[0].is_finite() && w[1].is_finite())) {
        return Err(Error::BadParam("non-finite evaluation point".into()));
    }
    let xs: Vec<Point> = grid.points().collect();
    let vol = grid.cell_volume();
    Ok(wpoints
        .par_iter()
        .map(|w| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, v) in xs.iter().zip(f.values()) {
                acc += v * kernel_eval(m, x, w);
            }
            acc * vol
        })
        .collect())
}

/// Precomputed factors of the chirp-FFT-chirp factorisation for one
/// (grid, matrix) pair. Reused for every row of a gram.
#[derive(Debug, Clone)]
pub(crate) struct FastPlan {
    wgrid: WarpedGrid,
    input_chirp: ChirpField,
    /// Per lattice point: `vol (2π)^{-n/2} e^{-iω·o} e^{i wᵀDB⁻¹w/2} / √|det B|`.
    post: Vec<Complex64>,
    /// Per lattice point: index of its bin in the unshifted DFT buffer.
    bin: Vec<usize>,
}

impl FastPlan {
    pub(crate) fn new(grid: &Grid, m: &FreeSymplecticMatrix) -> Result<Self> {
        check_dim(grid, m)?;
        let n = grid.dim();
        let wgrid = WarpedGrid::new(grid.clone(), *m.b())?;
        let input_chirp = ChirpField::input(grid, m);
        let output_chirp = ChirpField::output(&wgrid, m);
        let scale = grid.cell_volume() * (2.0 * PI).powf(-(n as f64) / 2.0) / m.det_b().abs().sqrt();
        let mut post = Vec::with_capacity(wgrid.len());
        let mut bin = Vec::with_capacity(wgrid.len());
        for i in 0..wgrid.len() {
            let omega = wgrid.omega(i);
            let origin_phase: f64 = (0..n).map(|j| omega[j] * grid.origin()[j]).sum();
            post.push(output_chirp.values()[i] * Complex64::from_polar(scale, -origin_phase));
            let lm = wgrid.lattice_index(i);
            let mut idx = [0usize; 2];
            for j in 0..n {
                idx[j] = lm[j].rem_euclid(grid.counts()[j] as i64) as usize;
            }
            bin.push(grid.ravel(idx));
        }
        Ok(FastPlan { wgrid, input_chirp, post, bin })
    }

    pub(crate) fn wgrid(&self) -> &WarpedGrid {
        &self.wgrid
    }

    pub(crate) fn forward(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> =
            samples.iter().zip(self.input_chirp.values()).map(|(v, c)| v * c).collect();
        fft_nd(&mut buf, self.wgrid.signal_grid().counts(), FftDirection::Forward);
        self.bin.iter().zip(&self.post).map(|(&b, p)| buf[b] * p).collect()
    }

    pub(crate) fn inverse(&self, spectrum: &[Complex64]) -> Vec<Complex64> {
        let grid = self.wgrid.signal_grid();
        let mut buf = vec![Complex64::new(0.0, 0.0); grid.len()];
        for ((&b, p), v) in self.bin.iter().zip(&self.post).zip(spectrum) {
            buf[b] = v / p;
        }
        fft_nd(&mut buf, grid.counts(), FftDirection::Inverse);
        let norm = 1.0 / grid.len() as f64;
        buf.iter().zip(self.input_chirp.values()).map(|(v, c)| v * c.conj() * norm).collect()
    }
}

/// Fast transform on the warped lattice `w = Bω_m`.
pub fn nslct_fast(f: &SampledSignal, m: &FreeSymplecticMatrix) -> Result<Spectrum> {
    let plan = FastPlan::new(f.grid(), m)?;
    let values = plan.forward(f.values());
    Spectrum::new(plan.wgrid.clone(), values)
}

fn check_warp(spectrum: &Spectrum, m: &FreeSymplecticMatrix) -> Result<()> {
    let warp = spectrum.wgrid().map();
    if warp.dim() != m.dim() || (*warp - *m.b()).max_abs() > 1e-12 * m.b().max_abs() {
        return Err(Error::GridMismatch(format!(
            "spectrum warp {:?} does not match B = {:?}",
            warp.row_major(),
            m.b().row_major()
        )));
    }
    Ok(())
}

/// Inverse transform of a spectrum produced on `M`'s warped lattice.
///
/// Computes `f(x_k) = Σ_m F_m conj(K_M(x_k, w_m)) · wcell` by undoing the
/// three factorisation steps.
pub fn nslct_inverse(spectrum: &Spectrum, m: &FreeSymplecticMatrix) -> Result<SampledSignal> {
    check_warp(spectrum, m)?;
    let grid = spectrum.wgrid().signal_grid();
    let plan = FastPlan::new(grid, m)?;
    SampledSignal::new(grid.clone(), plan.inverse(spectrum.values()))
}

/// The same inverse as [`nslct_inverse`], summed point by point.
pub fn nslct_inverse_direct(spectrum: &Spectrum, m: &FreeSymplecticMatrix) -> Result<SampledSignal> {
    check_warp(spectrum, m)?;
    let wgrid = spectrum.wgrid();
    let grid = wgrid.signal_grid();
    let wpoints: Vec<Point> = wgrid.points().collect();
    let wcell = wgrid.cell_volume();
    let values = grid
        .points()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, v) in wpoints.iter().zip(spectrum.values()) {
                acc += v * kernel_eval(m, x, w).conj();
            }
            acc * wcell
        })
        .collect();
    SampledSignal::new(grid.clone(), values)
}
