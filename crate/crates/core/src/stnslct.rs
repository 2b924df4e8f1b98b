//! Short-time NSLCT `V_φ[f](w, u) = ∫ f(x) conj(φ(x−u)) K_M(x, w) dx`.
//!
//! For a fixed shift `u` this is the NSLCT of `f · conj(φ(·−u))`, so every
//! gram row is one fast transform. Shifts are integer sample offsets.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nslct::FastPlan;
use crate::sampling::{inner, lp_norm, same_grid, Gram, SampledSignal, ShiftLattice};
use crate::symplectic::FreeSymplecticMatrix;

/// Window `φ` together with its squared norm and the shift stride.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    window: SampledSignal,
    norm2: f64,
    shifts: ShiftLattice,
}

impl WindowSpec {
    pub fn new(window: SampledSignal, stride: usize) -> Result<Self> {
        let norm2 = inner(&window, &window)?.re;
        if !(norm2 > 0.0) {
            return Err(Error::ZeroSignal("window has zero norm".into()));
        }
        let shifts = ShiftLattice::new(window.grid().clone(), stride)?;
        Ok(WindowSpec { window, norm2, shifts })
    }

    pub fn window(&self) -> &SampledSignal {
        &self.window
    }
    /// `‖φ‖₂²`.
    pub fn norm2(&self) -> f64 {
        self.norm2
    }
    pub fn stride(&self) -> usize {
        self.shifts.stride()
    }
    pub fn shifts(&self) -> &ShiftLattice {
        &self.shifts
    }
}

/// `f(x_k) · conj(φ(x_k − u_r))` with zeros where the shifted window leaves the grid.
pub fn windowed(f: &SampledSignal, wspec: &WindowSpec, r: usize) -> Vec<Complex64> {
    let phi = wspec.window.values();
    f.values()
        .iter()
        .enumerate()
        .map(|(k, v)| match wspec.shifts.shifted_index(k, r) {
            Some(i) => v * phi[i].conj(),
            None => Complex64::new(0.0, 0.0),
        })
        .collect()
}

/// The full gram: one fast NSLCT of the windowed signal per shift.
pub fn stnslct_gram(f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix) -> Result<Gram> {
    same_grid(f.grid(), wspec.window.grid())?;
    let plan = FastPlan::new(f.grid(), m)?;
    let rows: Vec<Vec<Complex64>> = (0..wspec.shifts.len())
        .into_par_iter()
        .map(|r| plan.forward(&windowed(f, wspec, r)))
        .collect();
    Gram::new(plan.wgrid().clone(), wspec.shifts.clone(), rows.concat())
}

/// `(2π)^{-n/2} |det B|^{-1/2} ‖f‖₂ ‖φ‖₂`.
pub fn boundedness_bound(f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix) -> Result<f64> {
    let n = m.dim() as f64;
    Ok((2.0 * PI).powf(-n / 2.0) / m.det_b().abs().sqrt() * lp_norm(f, 2.0)? * wspec.norm2.sqrt())
}

/// `bound − sup|V|`; non-negative up to rounding.
pub fn boundedness_margin(g: &Gram, f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix) -> Result<f64> {
    let sup = lp_norm(g, f64::INFINITY)?;
    Ok(boundedness_bound(f, wspec, m)? - sup)
}

/// Normalisation used by [`stnslct_reconstruct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Divide by `Σ_u |φ(x−u)|² · ucell` at each sample.
    #[default]
    Pointwise,
    /// Divide by the constant `‖φ‖₂²`.
    Constant,
}

/// Reconstruct `f` from its gram:
/// `f̂(x) = Σ_u Σ_w V(w,u) φ(x−u) conj(K_M(x,w)) wcell ucell / denom(x)`.
pub fn stnslct_reconstruct(
    g: &Gram,
    wspec: &WindowSpec,
    m: &FreeSymplecticMatrix,
    mode: Normalization,
) -> Result<SampledSignal> {
    if g.shifts() != &wspec.shifts {
        return Err(Error::GridMismatch("gram shifts do not match the window spec".into()));
    }
    let grid = g.wgrid().signal_grid();
    let plan = FastPlan::new(grid, m)?;
    if plan.wgrid() != g.wgrid() {
        return Err(Error::GridMismatch("gram lattice does not match B of the matrix".into()));
    }
    let rows: Vec<Vec<Complex64>> = (0..g.shifts().len()).into_par_iter().map(|r| plan.inverse(g.row(r))).collect();

    let ucell = g.shifts().cell_volume();
    let phi = wspec.window.values();
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut denom = vec![0.0f64; grid.len()];
    for (r, row) in rows.iter().enumerate() {
        for k in 0..grid.len() {
            if let Some(i) = g.shifts().shifted_index(k, r) {
                acc[k] += row[k] * phi[i] * ucell;
                denom[k] += phi[i].norm_sqr() * ucell;
            }
        }
    }
    let values = match mode {
        Normalization::Constant => acc.iter().map(|a| a / wspec.norm2).collect(),
        Normalization::Pointwise => {
            if let Some((index, &d)) = denom.iter().enumerate().find(|(_, &d)| !(d >= 1e-9)) {
                return Err(Error::CoverageError { index, denom: d });
            }
            acc.iter().zip(&denom).map(|(a, d)| a / d).collect()
        }
    };
    SampledSignal::new(grid.clone(), values)
}

/// `⟨V₁, V₂⟩ = Σ V₁ conj(V₂) · wcell · ucell`.
pub fn moyal(g1: &Gram, g2: &Gram) -> Result<Complex64> {
    if !g1.same_lattice(g2) {
        return Err(Error::GridMismatch("grams live on different lattices".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in g1.values().iter().zip(g2.values()) {
        acc += a * b.conj();
    }
    Ok(acc * crate::sampling::Measured::cell_volume(g1))
}

/// Signal-side value of Moyal's pairing, `⟨f, g⟩ · ⟨φ₂, φ₁⟩`.
pub fn moyal_signal_side(
    f: &SampledSignal,
    g: &SampledSignal,
    phi1: &SampledSignal,
    phi2: &SampledSignal,
) -> Result<Complex64> {
    Ok(inner(f, g)? * inner(phi2, phi1)?)
}
