//! Free symplectic matrices `M = (A, B : C, D)` for n = 1 and n = 2.
//!
//! All linear algebra here is closed form on at most 2×2 blocks, so there is
//! no dependency on a general matrix library.

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Constraint, Error, Result};

/// Absolute max-norm tolerance on the three block constraints.
pub const TAU_SYM: f64 = 1e-9;
/// `|det B|` must exceed this for the matrix to be free.
pub const TAU_DET: f64 = 1e-12;

/// A real n×n block, n ∈ {1, 2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    n: usize,
    m: [[f64; 2]; 2],
}

impl Block {
    pub fn zeros(n: usize) -> Self {
        Block { n, m: [[0.0; 2]; 2] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    pub fn scalar(n: usize, s: f64) -> Self {
        let mut b = Self::zeros(n);
        for i in 0..n {
            b.m[i][i] = s;
        }
        b
    }

    /// Diagonal block; `diag.len()` is the dimension.
    pub fn diag(diag: &[f64]) -> Result<Self> {
        check_dim(diag.len())?;
        let mut b = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            b.m[i][i] = v;
        }
        Ok(b)
    }

    /// Block from `n*n` row-major entries.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        check_dim(n)?;
        if entries.len() != n * n {
            return Err(Error::DimensionError(format!(
                "expected {} entries for a {n}x{n} block, got {}",
                n * n,
                entries.len()
            )));
        }
        let mut b = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                b.m[i][j] = entries[i * n + j];
            }
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n);
        self.m[i][j]
    }

    pub fn row_major(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            v.extend_from_slice(&self.m[i][..self.n]);
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut t = *self;
        t.m[0][1] = self.m[1][0];
        t.m[1][0] = self.m[0][1];
        t
    }

    pub fn det(&self) -> f64 {
        match self.n {
            1 => self.m[0][0],
            _ => self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0],
        }
    }

    /// Closed-form inverse; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let mut inv = Self::zeros(self.n);
        match self.n {
            1 => inv.m[0][0] = 1.0 / det,
            _ => {
                inv.m[0][0] = self.m[1][1] / det;
                inv.m[0][1] = -self.m[0][1] / det;
                inv.m[1][0] = -self.m[1][0] / det;
                inv.m[1][1] = self.m[0][0] / det;
            }
        }
        Some(inv)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut r = *self;
        for row in r.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        r
    }

    pub fn max_abs(&self) -> f64 {
        self.row_major().iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.row_major().iter().all(|v| v.is_finite())
    }

    pub fn is_diagonal(&self) -> bool {
        self.n == 1 || (self.m[0][1] == 0.0 && self.m[1][0] == 0.0)
    }

    /// `y = self · x`; only the first `n` entries of `x` are read.
    pub fn apply(&self, x: &[f64]) -> [f64; 2] {
        let mut y = [0.0; 2];
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            *yi = (0..self.n).map(|j| self.m[i][j] * x[j]).sum();
        }
        y
    }

    /// `xᵀ · self · y`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let my = self.apply(y);
        (0..self.n).map(|i| x[i] * my[i]).sum()
    }

    /// Smallest singular value.
    ///
    /// For n = 2 the eigenvalues of `BᵀB` are the roots of a quadratic; the
    /// larger root comes from the quadratic formula and the smaller from the
    /// product of the roots (`det(BᵀB) = det(B)²`), which avoids cancellation.
    pub fn sigma_min(&self) -> f64 {
        match self.n {
            1 => self.m[0][0].abs(),
            _ => {
                let g = self.transpose() * *self;
                let p = g.m[0][0];
                let q = g.m[0][1];
                let r = g.m[1][1];
                let half_tr = 0.5 * (p + r);
                let disc = (0.5 * (p - r)).hypot(q);
                let lambda_max = half_tr + disc;
                if lambda_max == 0.0 {
                    return 0.0;
                }
                self.det().abs() / lambda_max.sqrt()
            }
        }
    }
}

impl Mul for Block {
    type Output = Block;
    fn mul(self, rhs: Block) -> Block {
        assert_eq!(self.n, rhs.n, "block dimension mismatch");
        let mut out = Block::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.m[i][j] = (0..self.n).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        out
    }
}

impl Add for Block {
    type Output = Block;
    fn add(self, rhs: Block) -> Block {
        assert_eq!(self.n, rhs.n, "block dimension mismatch");
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl Sub for Block {
    type Output = Block;
    fn sub(self, rhs: Block) -> Block {
        self + (-rhs)
    }
}

impl Neg for Block {
    type Output = Block;
    fn neg(self) -> Block {
        self.scale(-1.0)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 1 || n == 2 {
        Ok(())
    } else {
        Err(Error::DimensionError(format!("n = {n}, only n = 1 and n = 2 are supported")))
    }
}

/// The four blocks of a 2n×2n matrix, with no validation attached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocks {
    pub a: Block,
    pub b: Block,
    pub c: Block,
    pub d: Block,
}

impl Blocks {
    /// 2n×2n product `self · rhs`.
    pub fn product(&self, rhs: &Blocks) -> Blocks {
        Blocks {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Max-norm distance to the group identity `(I, 0 : 0, I)`.
    pub fn distance_to_identity(&self) -> f64 {
        let n = self.a.dim();
        let id = Block::identity(n);
        let z = Block::zeros(n);
        (self.a - id)
            .max_abs()
            .max((self.b - z).max_abs())
            .max((self.c - z).max_abs())
            .max((self.d - id).max_abs())
    }

    pub fn max_abs_diff(&self, other: &Blocks) -> f64 {
        (self.a - other.a)
            .max_abs()
            .max((self.b - other.b).max_abs())
            .max((self.c - other.c).max_abs())
            .max((self.d - other.d).max_abs())
    }
}

/// A validated free symplectic matrix with its derived quantities cached.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeSymplecticMatrix {
    blocks: Blocks,
    det_b: f64,
    b_inv: Block,
    b_inv_t: Block,
    d_b_inv: Block,
    b_inv_a: Block,
    sigma_min_b: f64,
}

impl FreeSymplecticMatrix {
    /// Validate `(A, B : C, D)` against the free-symplectic constraints.
    pub fn validate(a: Block, b: Block, c: Block, d: Block) -> Result<Self> {
        let n = a.dim();
        check_dim(n)?;
        if [b.dim(), c.dim(), d.dim()].iter().any(|&m| m != n) {
            return Err(Error::DimensionError(format!(
                "block dimensions differ: A {n}, B {}, C {}, D {}",
                b.dim(),
                c.dim(),
                d.dim()
            )));
        }
        if ![a, b, c, d].iter().all(Block::is_finite) {
            return Err(Error::DimensionError("non-finite matrix entry".into()));
        }

        let ab = a * b.transpose() - b * a.transpose();
        let cd = c * d.transpose() - d * c.transpose();
        let unit = a * d.transpose() - b * c.transpose() - Block::identity(n);
        for (constraint, residual) in [
            (Constraint::AbSymmetric, ab.max_abs()),
            (Constraint::CdSymmetric, cd.max_abs()),
            (Constraint::AdBcIdentity, unit.max_abs()),
        ] {
            if !(residual <= TAU_SYM) {
                return Err(Error::SymplecticViolation { constraint, residual });
            }
        }

        let det_b = b.det();
        if !(det_b.abs() > TAU_DET) {
            return Err(Error::SingularB { det: det_b });
        }
        let b_inv = b.inverse().ok_or(Error::SingularB { det: det_b })?;
        Ok(FreeSymplecticMatrix {
            blocks: Blocks { a, b, c, d },
            det_b,
            b_inv,
            b_inv_t: b_inv.transpose(),
            d_b_inv: d * b_inv,
            b_inv_a: b_inv * a,
            sigma_min_b: b.sigma_min(),
        })
    }

    pub fn from_blocks(blocks: Blocks) -> Result<Self> {
        Self::validate(blocks.a, blocks.b, blocks.c, blocks.d)
    }

    pub fn preset(n: usize, preset: &Preset) -> Result<Self> {
        check_dim(n)?;
        match preset {
            Preset::Fourier => Self::validate(
                Block::zeros(n),
                Block::identity(n),
                -Block::identity(n),
                Block::zeros(n),
            ),
            Preset::Frft { alpha } => {
                let (s, c) = alpha.sin_cos();
                Self::validate(
                    Block::scalar(n, c),
                    Block::scalar(n, s),
                    Block::scalar(n, -s),
                    Block::scalar(n, c),
                )
            }
            Preset::Fresnel { b } => {
                if b.dim() != n {
                    return Err(Error::DimensionError(format!(
                        "fresnel B is {}x{0}, expected {n}x{n}",
                        b.dim()
                    )));
                }
                Self::validate(Block::identity(n), *b, Block::zeros(n), Block::identity(n))
            }
            Preset::Separable { axes } => {
                if axes.len() != n {
                    return Err(Error::DimensionError(format!(
                        "separable preset has {} axes, expected {n}",
                        axes.len()
                    )));
                }
                if let Some(ax) = axes.iter().find(|ax| ax[1] == 0.0) {
                    return Err(Error::SingularB { det: ax[1] });
                }
                let col = |k: usize| axes.iter().map(|ax| ax[k]).collect::<Vec<_>>();
                Self::validate(
                    Block::diag(&col(0))?,
                    Block::diag(&col(1))?,
                    Block::diag(&col(2))?,
                    Block::diag(&col(3))?,
                )
            }
        }
    }

    /// `M⁻¹ = (Dᵀ, −Bᵀ : −Cᵀ, Aᵀ)`.
    pub fn inverse(&self) -> Result<Self> {
        let Blocks { a, b, c, d } = self.blocks;
        Self::validate(d.transpose(), -b.transpose(), -c.transpose(), a.transpose())
    }

    /// The 2n×2n product `self · rhs`, validated as a free matrix.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionError(format!(
                "cannot compose n = {} with n = {}",
                self.dim(),
                rhs.dim()
            )));
        }
        Self::from_blocks(self.blocks.product(&rhs.blocks))
    }

    pub fn dim(&self) -> usize {
        self.blocks.a.dim()
    }
    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }
    pub fn a(&self) -> &Block {
        &self.blocks.a
    }
    pub fn b(&self) -> &Block {
        &self.blocks.b
    }
    pub fn c(&self) -> &Block {
        &self.blocks.c
    }
    pub fn d(&self) -> &Block {
        &self.blocks.d
    }
    pub fn det_b(&self) -> f64 {
        self.det_b
    }
    pub fn b_inv(&self) -> &Block {
        &self.b_inv
    }
    pub fn b_inv_t(&self) -> &Block {
        &self.b_inv_t
    }
    /// `D B⁻¹`, the output chirp matrix.
    pub fn d_b_inv(&self) -> &Block {
        &self.d_b_inv
    }
    /// `B⁻¹ A`, the input chirp matrix.
    pub fn b_inv_a(&self) -> &Block {
        &self.b_inv_a
    }
    pub fn sigma_min_b(&self) -> f64 {
        self.sigma_min_b
    }
}

/// Named special cases of the transform.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// `(0, I : −I, 0)`
    Fourier,
    /// `(I cos α, I sin α : −I sin α, I cos α)`
    Frft { alpha: f64 },
    /// `(I, B : 0, I)`; B must be symmetric.
    Fresnel { b: Block },
    /// Diagonal blocks, one `[a, b, c, d]` per axis.
    Separable { axes: Vec<[f64; 4]> },
}

/// Draw a well-conditioned free symplectic matrix as a product
/// `fresnel(S) · separable · frft(θ)`.
///
/// Every factor is symplectic so the product is too. Draws are rejected
/// until `|det B| ∈ [0.25, 4]`, `σ_min(B) ≥ 0.35` and `‖B⁻¹A‖_max ≤ 1.2`,
/// which keeps the input chirp resolvable on desk-scale grids.
pub fn random_composed<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<FreeSymplecticMatrix> {
    check_dim(n)?;
    for _ in 0..10_000 {
        let s = match n {
            1 => Block::scalar(1, rng.gen_range(-0.6..0.6)),
            _ => {
                let off = rng.gen_range(-0.4..0.4);
                Block::from_row_major(
                    2,
                    &[rng.gen_range(-0.6..0.6), off, off, rng.gen_range(-0.6..0.6)],
                )?
            }
        };
        let axes = (0..n)
            .map(|_| {
                let a: f64 = rng.gen_range(0.6..1.6);
                let b: f64 = rng.gen_range(0.6..1.8) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let d: f64 = rng.gen_range(0.6..1.6);
                [a, b, (a * d - 1.0) / b, d]
            })
            .collect();
        let theta = rng.gen_range(0.35..1.35);
        let m = FreeSymplecticMatrix::preset(n, &Preset::Fresnel { b: s })?
            .compose(&FreeSymplecticMatrix::preset(n, &Preset::Separable { axes })?);
        let Ok(m) = m.and_then(|m| m.compose(&FreeSymplecticMatrix::preset(n, &Preset::Frft { alpha: theta })?))
        else {
            continue;
        };
        let det = m.det_b().abs();
        if (0.25..=4.0).contains(&det) && m.sigma_min_b() >= 0.35 && m.b_inv_a().max_abs() <= 1.2 {
            return Ok(m);
        }
    }
    Err(Error::BadParam("could not draw a well-conditioned matrix".into()))
}
