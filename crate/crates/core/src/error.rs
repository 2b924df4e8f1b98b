use thiserror::Error;

/// Which free-symplectic constraint failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// `A Bᵀ = B Aᵀ`
    AbSymmetric,
    /// `C Dᵀ = D Cᵀ`
    CdSymmetric,
    /// `A Dᵀ − B Cᵀ = I`
    AdBcIdentity,
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Constraint::AbSymmetric => "A*B^T == B*A^T",
            Constraint::CdSymmetric => "C*D^T == D*C^T",
            Constraint::AdBcIdentity => "A*D^T - B*C^T == I",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("SymplecticViolation: constraint {constraint} violated (residual {residual:e})")]
    SymplecticViolation { constraint: Constraint, residual: f64 },

    #[error("SingularB: |det B| = {det:e} is not above the threshold")]
    SingularB { det: f64 },

    #[error("DimensionError: {0}")]
    DimensionError(String),

    #[error("GridMismatch: {0}")]
    GridMismatch(String),

    #[error("BadParam: {0}")]
    BadParam(String),

    #[error("CoverageError: window partition denominator {denom:e} at sample {index}")]
    CoverageError { index: usize, denom: f64 },

    #[error("ZeroSignal: {0}")]
    ZeroSignal(String),

    #[error("BadAlpha: alpha = {alpha} must satisfy 0 <= alpha < n = {n}")]
    BadAlpha { alpha: f64, n: usize },

    #[error("BadP: {0}")]
    BadP(String),

    #[error("BadBox: {0}")]
    BadBox(String),

    #[error("DomainError: {0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
