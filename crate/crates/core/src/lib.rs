//! Non-separable linear canonical transform (NSLCT) and short-time NSLCT for
//! 1-D and 2-D complex signals.
//!
//! The crate is organised bottom-up:
//!
//! * [`symplectic`] builds and validates free symplectic matrices `M = (A, B : C, D)`.
//! * [`sampling`] holds uniform grids, sampled signals, warped frequency lattices
//!   and the discrete inner products / Lp norms used everywhere else.
//! * [`nslct`] evaluates the transform kernel and computes the transform by direct
//!   quadrature or by the chirp-FFT-chirp factorisation, plus its inverse.
//! * [`stnslct`] computes the windowed transform ("gram"), reconstruction, Moyal's
//!   pairing and the pointwise boundedness margin.
//! * [`uncertainty`] evaluates both sides of the Pitt, Lieb, Heisenberg,
//!   Hausdorff-Young and logarithmic inequalities.
//! * [`cli`] implements the file formats and the `nslct` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod error;
mod fft;
pub mod nslct;
pub mod sampling;
pub mod special;
pub mod stnslct;
pub mod symplectic;
pub mod uncertainty;

pub use error::{Constraint, Error, Result};
pub use num_complex::Complex64;
