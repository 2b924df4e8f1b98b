//! Two-sided numeric reports for uncertainty inequalities of the short-time
//! NSLCT, plus energy-concentration functionals.
//!
//! Every report carries both sides, the constant involved and a signed margin
//! that is non-negative when the inequality holds.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::sampling::{energy, lp_norm, Gram, Measured, Point, SampledSignal};
use crate::special::{log_constant, pitt_constant};
use crate::stnslct::{stnslct_gram, WindowSpec};
use crate::symplectic::FreeSymplecticMatrix;

/// Relative slack allowed on every inequality margin.
pub const REPORT_TOL: f64 = 1e-9;

/// How `lhs` and `rhs` are meant to compare.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Direction {
    /// `lhs ≥ rhs`, margin `lhs − rhs`.
    AtLeast,
    /// `lhs ≤ rhs`, margin `rhs − lhs`.
    AtMost,
    /// `lhs = rhs` up to `rel_tol`, margin `rhs − lhs`.
    Equal { rel_tol: f64 },
}

/// One evaluated inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct UPReport {
    pub name: String,
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub margin: f64,
    pub direction: Direction,
}

impl UPReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, constant: f64, direction: Direction) -> Self {
        let margin = match direction {
            Direction::AtLeast => lhs - rhs,
            Direction::AtMost | Direction::Equal { .. } => rhs - lhs,
        };
        UPReport { name: name.to_string(), params: String::new(), lhs, rhs, constant, margin, direction }
    }

    pub fn with_params(mut self, params: impl Into<String>) -> Self {
        self.params = params.into();
        self
    }

    pub fn scale(&self) -> f64 {
        self.lhs.abs().max(self.rhs.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.lhs.is_finite() && self.rhs.is_finite() && self.constant.is_finite() && self.margin.is_finite()
    }

    pub fn passes(&self) -> bool {
        if !self.is_finite() {
            return false;
        }
        match self.direction {
            Direction::Equal { rel_tol } => self.margin.abs() <= rel_tol * self.scale(),
            _ => self.margin >= -REPORT_TOL * self.scale(),
        }
    }
}

impl fmt::Display for UPReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] lhs={:e} rhs={:e} margin={:e} {}",
            self.name,
            self.params,
            self.lhs,
            self.rhs,
            self.margin,
            if self.passes() { "pass" } else { "FAIL" }
        )
    }
}

fn norm(p: &Point, n: usize) -> f64 {
    p[..n].iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn nonzero(f: &SampledSignal, what: &str) -> Result<f64> {
    let e = energy(f);
    if e > 0.0 {
        Ok(e)
    } else {
        Err(Error::ZeroSignal(format!("{what} is identically zero")))
    }
}

/// `vol · Σ |x_k|² |f_k|²`.
pub fn dispersion_spatial(f: &SampledSignal) -> Result<f64> {
    nonzero(f, "signal")?;
    Ok(spatial_weighted(f, |r| r * r))
}

fn spatial_weighted(f: &SampledSignal, weight: impl Fn(f64) -> f64) -> f64 {
    let g = f.grid();
    let n = g.dim();
    let s: f64 = f.values().iter().enumerate().map(|(k, v)| weight(norm(&g.point(k), n)) * v.norm_sqr()).sum();
    s * g.cell_volume()
}

fn gram_weighted(g: &Gram, weight: impl Fn(usize) -> f64) -> f64 {
    let w = g.wgrid().len();
    let weights: Vec<f64> = (0..w).map(weight).collect();
    let s: f64 = g.rows().map(|row| row.iter().zip(&weights).map(|(v, c)| c * v.norm_sqr()).sum::<f64>()).sum();
    s * g.cell_volume()
}

/// `ΣΣ |w|² |V(w,u)|² · wcell · ucell` over the warped lattice.
pub fn dispersion_spectral(g: &Gram) -> f64 {
    let n = g.wgrid().dim();
    gram_weighted(g, |i| {
        let r = norm(&g.wgrid().point(i), n);
        r * r
    })
}

/// Heisenberg: `(∫∫|w|²|V|²)^{1/2} (∫|x|²|f|²)^{1/2} ≥ n σ_min(B)/(4π) ‖f‖₂² ‖φ‖₂`.
pub fn heisenberg_report(f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix) -> Result<UPReport> {
    heisenberg_from_gram(&stnslct_gram(f, wspec, m)?, f, wspec, m)
}

pub fn heisenberg_from_gram(
    g: &Gram,
    f: &SampledSignal,
    wspec: &WindowSpec,
    m: &FreeSymplecticMatrix,
) -> Result<UPReport> {
    let ef = nonzero(f, "signal")?;
    let constant = m.dim() as f64 * m.sigma_min_b() / (4.0 * PI);
    let lhs = dispersion_spectral(g).sqrt() * dispersion_spatial(f)?.sqrt();
    let rhs = constant * ef * wspec.norm2().sqrt();
    Ok(UPReport::new("heisenberg", lhs, rhs, constant, Direction::AtLeast))
}

/// Pitt: `∫∫|w|^{−α}|V|² ≤ C_α |det B|^{−α} ‖φ‖₂² ∫|x|^α|f|²`.
///
/// For `α > 0` the zero-frequency cell gets weight 0.
pub fn pitt_report(f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix, alpha: f64) -> Result<UPReport> {
    pitt_constant(m.dim(), alpha)?;
    pitt_from_gram(&stnslct_gram(f, wspec, m)?, f, wspec, m, alpha)
}

pub fn pitt_from_gram(
    g: &Gram,
    f: &SampledSignal,
    wspec: &WindowSpec,
    m: &FreeSymplecticMatrix,
    alpha: f64,
) -> Result<UPReport> {
    let n = m.dim();
    let constant = pitt_constant(n, alpha)?;
    let lhs = if alpha == 0.0 {
        energy(g)
    } else {
        gram_weighted(g, |i| {
            let r = norm(&g.wgrid().point(i), n);
            if r > 0.0 {
                r.powf(-alpha)
            } else {
                0.0
            }
        })
    };
    let moment = if alpha == 0.0 { energy(f) } else { spatial_weighted(f, |r| r.powf(alpha)) };
    let rhs = constant * m.det_b().abs().powf(-alpha) * wspec.norm2() * moment;
    Ok(UPReport::new("pitt", lhs, rhs, constant, Direction::AtMost).with_params(format!("alpha={alpha}")))
}

/// Lieb: `∫∫|V|^p ≤ (2/p) |det B|^{1−p/2}` for unit-norm `f` and `φ`.
///
/// Inputs are normalised internally, so the report is scale invariant.
pub fn lieb_report(f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix, p: f64) -> Result<UPReport> {
    check_lieb_p(p)?;
    lieb_from_gram(&stnslct_gram(f, wspec, m)?, f, wspec, m, p)
}

fn check_lieb_p(p: f64) -> Result<()> {
    if p >= 2.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::BadP(format!("Lieb exponent p = {p} must be finite and >= 2")))
    }
}

pub fn lieb_from_gram(
    g: &Gram,
    f: &SampledSignal,
    wspec: &WindowSpec,
    m: &FreeSymplecticMatrix,
    p: f64,
) -> Result<UPReport> {
    check_lieb_p(p)?;
    let scale = (nonzero(f, "signal")? * wspec.norm2()).sqrt();
    let lhs = lp_norm(g, p)?.powf(p) / scale.powf(p);
    let constant = 2.0 / p;
    let rhs = constant * m.det_b().abs().powf(1.0 - p / 2.0);
    Ok(UPReport::new("lieb", lhs, rhs, constant, Direction::AtMost).with_params(format!("p={p}")))
}

/// Hausdorff–Young: `‖V‖_q ≤ ‖φ‖_q ‖f‖_p` with `1/p + 1/q = 1`, `1 ≤ p ≤ 2`.
pub fn hausdorff_young_report(
    f: &SampledSignal,
    wspec: &WindowSpec,
    m: &FreeSymplecticMatrix,
    p: f64,
) -> Result<UPReport> {
    conjugate_exponent(p)?;
    hausdorff_young_from_gram(&stnslct_gram(f, wspec, m)?, f, wspec, p)
}

/// `q = p/(p−1)`, infinite at `p = 1`.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::BadP(format!("Hausdorff-Young exponent p = {p} must lie in [1, 2]")));
    }
    Ok(if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) })
}

pub fn hausdorff_young_from_gram(g: &Gram, f: &SampledSignal, wspec: &WindowSpec, p: f64) -> Result<UPReport> {
    let q = conjugate_exponent(p)?;
    let lhs = lp_norm(g, q)?;
    let rhs = lp_norm(wspec.window(), q)? * lp_norm(f, p)?;
    Ok(UPReport::new("hausdorff_young", lhs, rhs, 1.0, Direction::AtMost).with_params(format!("p={p}")))
}

/// Logarithmic: `∫∫ ln|B⁻¹w| |V|² + ‖φ‖₂² ∫ ln|x| |f|² ≥ (ψ(n/2) − ln π) ‖φ‖₂² ‖f‖₂²`.
///
/// Cells at `w = 0` and `x = 0` get weight 0.
pub fn log_report(f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix) -> Result<UPReport> {
    log_from_gram(&stnslct_gram(f, wspec, m)?, f, wspec, m)
}

pub fn log_from_gram(g: &Gram, f: &SampledSignal, wspec: &WindowSpec, m: &FreeSymplecticMatrix) -> Result<UPReport> {
    let ef = nonzero(f, "signal")?;
    let n = m.dim();
    let safe_ln = |r: f64| if r > 0.0 { r.ln() } else { 0.0 };
    let spectral = gram_weighted(g, |i| safe_ln(norm(&g.wgrid().omega(i), n)));
    let spatial = wspec.norm2() * spatial_weighted(f, safe_ln);
    let constant = log_constant(n)?;
    let rhs = constant * wspec.norm2() * ef;
    Ok(UPReport::new("log", spectral + spatial, rhs, constant, Direction::AtLeast))
}

/// Half-open axis-aligned box `[lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        BoxRegion { lo, hi }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.lo.iter().zip(&self.hi).enumerate().all(|(j, (lo, hi))| p[j] >= *lo && p[j] < *hi)
    }

    fn check(&self, what: &str, n: usize, extent: impl Fn(usize) -> (f64, f64)) -> Result<()> {
        if self.lo.len() != n || self.hi.len() != n {
            return Err(Error::BadBox(format!("{what} box has dimension {} but signal has {n}", self.lo.len())));
        }
        for j in 0..n {
            let (lo, hi) = (self.lo[j], self.hi[j]);
            let (emin, emax) = extent(j);
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::BadBox(format!("{what} box has non-finite bounds on axis {j}")));
            }
            if lo > hi {
                return Err(Error::BadBox(format!("{what} box has lo {lo} > hi {hi} on axis {j}")));
            }
            let slack = 1e-12 * (emax - emin);
            if lo < emin - slack || hi > emax + slack {
                return Err(Error::BadBox(format!(
                    "{what} box [{lo}, {hi}) leaves the extent [{emin}, {emax}] on axis {j}"
                )));
            }
        }
        Ok(())
    }
}

/// Tail energies of `f` outside `S` and of the gram outside `w ∈ B·E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationSets {
    pub signal_tail: f64,
    pub signal_total: f64,
    pub gram_tail: f64,
    pub gram_total: f64,
}

/// `S` is a box in `x`; `E` is a box in the unwarped frequency `ω = B⁻¹w`,
/// bounded by the Nyquist range `[−π/Δ_j, π/Δ_j]`.
pub fn concentration(
    f: &SampledSignal,
    g: &Gram,
    s: &BoxRegion,
    e: &BoxRegion,
    m: &FreeSymplecticMatrix,
) -> Result<ConcentrationSets> {
    let grid = f.grid();
    let n = grid.dim();
    if g.wgrid().signal_grid() != grid || m.dim() != n {
        return Err(Error::GridMismatch("gram, signal and matrix disagree on the grid".into()));
    }
    s.check("S", n, |j| grid.extent(j))?;
    e.check("E", n, |j| (-PI / grid.spacing()[j], PI / grid.spacing()[j]))?;

    let vol = grid.cell_volume();
    let signal_total = energy(f);
    let tail: f64 =
        f.values().iter().enumerate().filter(|(k, _)| !s.contains(&grid.point(*k))).map(|(_, v)| v.norm_sqr()).sum();
    let gram_total = energy(g);
    let gram_tail = gram_weighted(g, |i| if e.contains(&g.wgrid().omega(i)) { 0.0 } else { 1.0 });
    Ok(ConcentrationSets { signal_tail: tail * vol, signal_total, gram_tail, gram_total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{synthesize, Grid, Synth};
    use crate::symplectic::{Block, Preset};
    use crate::Complex64;

    fn unit_gauss(grid: &Grid) -> SampledSignal {
        synthesize(&Synth::Gaussian { sigma: 1.0, center: [0.0; 2], freq: [0.0; 2] }, grid).unwrap()
    }

    fn fourier() -> FreeSymplecticMatrix {
        FreeSymplecticMatrix::preset(1, &Preset::Fourier).unwrap()
    }

    fn matched() -> (SampledSignal, WindowSpec) {
        let grid = Grid::self_dual(1, 256).unwrap();
        let f = unit_gauss(&grid);
        let ws = WindowSpec::new(f.clone(), 1).unwrap();
        (f, ws)
    }

    #[test]
    fn spatial_dispersion_of_unit_gaussian() {
        let (f, _) = matched();
        assert!((dispersion_spatial(&f).unwrap() - 0.5).abs() < 1e-8);
    }

    #[test]
    fn spatial_dispersion_parallel_axis() {
        let grid = Grid::self_dual(1, 256).unwrap();
        let c = 1.5;
        let f = synthesize(&Synth::Gaussian { sigma: 1.0, center: [c, 0.0], freq: [0.0; 2] }, &grid).unwrap();
        assert!((dispersion_spatial(&f).unwrap() - (0.5 + c * c)).abs() < 1e-8);
    }

    #[test]
    fn spatial_dispersion_delta_and_zero() {
        let grid = Grid::centered(vec![16], vec![0.5]).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); 16];
        v[8] = Complex64::new(1.0, 0.0);
        assert_eq!(dispersion_spatial(&SampledSignal::new(grid.clone(), v).unwrap()).unwrap(), 0.0);
        assert!(matches!(dispersion_spatial(&SampledSignal::zeros(grid)), Err(Error::ZeroSignal(_))));
    }

    #[test]
    fn spectral_dispersion_scales_quadratically() {
        let (f, ws) = matched();
        let g = stnslct_gram(&f, &ws, &fourier()).unwrap();
        let base = dispersion_spectral(&g);
        let scaled = dispersion_spectral(&g.scaled(Complex64::new(0.0, 3.0)));
        assert!((scaled - 9.0 * base).abs() <= 1e-12 * scaled);
        assert_eq!(dispersion_spectral(&g.scaled(Complex64::new(0.0, 0.0))), 0.0);
        assert!((base - 1.0).abs() < 1e-8, "{base}");
    }

    #[test]
    fn heisenberg_matched_gaussians() {
        let (f, ws) = matched();
        let r = heisenberg_report(&f, &ws, &fourier()).unwrap();
        assert!((r.constant - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert!((r.rhs - ws.norm2().sqrt() / (4.0 * PI)).abs() < 1e-15);
        assert!((r.lhs - 0.5f64.sqrt()).abs() < 1e-8);
        assert!(r.passes() && r.margin > 0.0);
    }

    #[test]
    fn heisenberg_constant_uses_sigma_min() {
        let (f, ws) = matched();
        let m = FreeSymplecticMatrix::preset(1, &Preset::Fresnel { b: Block::scalar(1, 2.0) }).unwrap();
        let r = heisenberg_report(&f, &ws, &m).unwrap();
        assert!((r.constant - 2.0 / (4.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn reports_are_homogeneous() {
        let grid = Grid::self_dual(1, 128).unwrap();
        let f = synthesize(&Synth::Noise { seed: 4, bandwidth: 2.0, envelope: 2.0 }, &grid).unwrap();
        let ws = WindowSpec::new(unit_gauss(&grid), 1).unwrap();
        let m = FreeSymplecticMatrix::preset(1, &Preset::Frft { alpha: 0.6 }).unwrap();
        let c = Complex64::new(1.2, -0.9);
        let fc = f.scaled(c);
        let k = c.norm_sqr();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
        let (h, hc) = (heisenberg_report(&f, &ws, &m).unwrap(), heisenberg_report(&fc, &ws, &m).unwrap());
        assert!(close(hc.lhs, k * h.lhs) && close(hc.rhs, k * h.rhs));
        let (p, pc) = (pitt_report(&f, &ws, &m, 0.5).unwrap(), pitt_report(&fc, &ws, &m, 0.5).unwrap());
        assert!(close(pc.lhs, k * p.lhs) && close(pc.rhs, k * p.rhs));
        let (l, lc) = (lieb_report(&f, &ws, &m, 4.0).unwrap(), lieb_report(&fc, &ws, &m, 4.0).unwrap());
        assert!(close(lc.lhs, l.lhs) && close(lc.rhs, l.rhs));
        let (y, yc) =
            (hausdorff_young_report(&f, &ws, &m, 1.5).unwrap(), hausdorff_young_report(&fc, &ws, &m, 1.5).unwrap());
        assert!(close(yc.lhs, c.norm() * y.lhs) && close(yc.rhs, c.norm() * y.rhs));
        let (g, gc) = (log_report(&f, &ws, &m).unwrap(), log_report(&fc, &ws, &m).unwrap());
        assert!(close(gc.lhs, k * g.lhs) && close(gc.rhs, k * g.rhs));
    }

    #[test]
    fn endpoint_reductions_are_equalities() {
        let grid = Grid::self_dual(1, 256).unwrap();
        let f = synthesize(&Synth::Noise { seed: 9, bandwidth: 2.0, envelope: 2.0 }, &grid).unwrap();
        let ws = WindowSpec::new(unit_gauss(&grid), 1).unwrap();
        let m = fourier();
        let p = pitt_report(&f, &ws, &m, 0.0).unwrap();
        assert_eq!(p.constant, 1.0);
        assert!(p.margin.abs() <= 1e-6 * p.rhs);
        let y = hausdorff_young_report(&f, &ws, &m, 2.0).unwrap();
        assert!(y.margin.abs() <= 1e-6 * y.rhs);
        let l = lieb_report(&f, &ws, &m, 2.0).unwrap();
        assert!(l.margin.abs() <= 1e-6 * l.rhs);
    }

    #[test]
    fn lieb_matched_gaussians_p4() {
        let (f, ws) = matched();
        let r = lieb_report(&f, &ws, &fourier(), 4.0).unwrap();
        assert!((r.lhs - 1.0 / (4.0 * PI)).abs() < 1e-8);
        assert!((r.rhs - 0.5).abs() < 1e-15);
        assert!(r.passes());
    }

    #[test]
    fn hausdorff_young_sup_endpoint() {
        let (f, ws) = matched();
        let r = hausdorff_young_report(&f, &ws, &fourier(), 1.0).unwrap();
        let sup = lp_norm(&stnslct_gram(&f, &ws, &fourier()).unwrap(), f64::INFINITY).unwrap();
        assert_eq!(r.lhs, sup);
        assert!(r.passes());
    }

    #[test]
    fn log_constant_and_gaussian() {
        let (f, ws) = matched();
        let r = log_report(&f, &ws, &fourier()).unwrap();
        assert!((r.constant + 3.108_239_911_870_824).abs() < 1e-12);
        assert!((r.rhs - r.constant * ws.norm2()).abs() < 1e-12);
        assert!(r.passes() && r.margin > 0.0);
    }

    #[test]
    fn parameter_errors() {
        let (f, ws) = matched();
        let m = fourier();
        assert!(matches!(pitt_report(&f, &ws, &m, 1.0), Err(Error::BadAlpha { .. })));
        assert!(matches!(lieb_report(&f, &ws, &m, 1.5), Err(Error::BadP(_))));
        assert!(matches!(hausdorff_young_report(&f, &ws, &m, 2.5), Err(Error::BadP(_))));
        assert!(matches!(hausdorff_young_report(&f, &ws, &m, 0.5), Err(Error::BadP(_))));
        let z = SampledSignal::zeros(f.grid().clone());
        assert!(matches!(heisenberg_report(&z, &ws, &m), Err(Error::ZeroSignal(_))));
        assert!(matches!(log_report(&z, &ws, &m), Err(Error::ZeroSignal(_))));
    }

    #[test]
    fn concentration_boxes() {
        let (f, ws) = matched();
        let m = fourier();
        let g = stnslct_gram(&f, &ws, &m).unwrap();
        let grid = f.grid();
        let (lo, hi) = grid.extent(0);
        let nyq = PI / grid.spacing()[0];
        let whole_e = BoxRegion::new(vec![-nyq], vec![nyq]);

        let all = concentration(&f, &g, &BoxRegion::new(vec![lo], vec![hi]), &whole_e, &m).unwrap();
        assert_eq!(all.signal_tail, 0.0);
        let empty = concentration(&f, &g, &BoxRegion::new(vec![0.0], vec![0.0]), &whole_e, &m).unwrap();
        assert_eq!(empty.signal_tail, empty.signal_total);

        // |f|² = π^{-1/2} e^{-x²}, so the mass outside [-3, 3) is erfc(3)
        let erfc_3 = 2.209_049_699_858_544e-5;
        let s = BoxRegion::new(vec![-3.0], vec![3.0]);
        let c = concentration(&f, &g, &s, &whole_e, &m).unwrap();
        assert!((c.signal_tail / c.signal_total - erfc_3).abs() < 1e-3);
        assert!(c.gram_tail <= c.gram_total * (1.0 + 1e-12));

        let fine = Grid::centered(vec![2048], vec![0.01]).unwrap();
        let ff = unit_gauss(&fine);
        let gf = stnslct_gram(&ff, &WindowSpec::new(ff.clone(), 64).unwrap(), &m).unwrap();
        let nyq = PI / 0.01;
        let cf = concentration(&ff, &gf, &s, &BoxRegion::new(vec![-nyq], vec![nyq]), &m).unwrap();
        assert!((cf.signal_tail / cf.signal_total - erfc_3).abs() < 2e-6);
        assert!(c.gram_tail <= c.gram_total * (1.0 + 1e-12));
    }

    #[test]
    fn concentration_rejects_bad_boxes() {
        let (f, ws) = matched();
        let m = fourier();
        let g = stnslct_gram(&f, &ws, &m).unwrap();
        let e = BoxRegion::new(vec![-1.0], vec![1.0]);
        let bad = [
            BoxRegion::new(vec![0.0, 0.0], vec![1.0, 1.0]),
            BoxRegion::new(vec![1.0], vec![0.0]),
            BoxRegion::new(vec![f64::NAN], vec![1.0]),
            BoxRegion::new(vec![-1e3], vec![1.0]),
        ];
        for s in &bad {
            assert!(matches!(concentration(&f, &g, s, &e, &m), Err(Error::BadBox(_))), "{s:?}");
        }
        let e_wide = BoxRegion::new(vec![-1e3], vec![1e3]);
        let s = BoxRegion::new(vec![-1.0], vec![1.0]);
        assert!(matches!(concentration(&f, &g, &s, &e_wide, &m), Err(Error::BadBox(_))));
    }
}
