//! Exact and numerical computations in twisted group algebras of
//! semidirect products `Z^d ⋊ F` for finite cyclic `F`.
//!
//! The crate is organized in layers:
//!
//! * [`coeff`] — the exact coefficient ring: cyclotomic numbers and
//!   phases `c·e(r + s·θ)` with `θ` a formal symbol.
//! * [`grp`] — the groups `Z^d ⋊ F`, Smith normal form, torsion
//!   classes and maximal finite subgroups.
//! * [`tga`] — twisted convolution algebras over those groups:
//!   generators, relations, projections and the canonical trace.
//! * [`ktheory`] — K-group ranks, trace images and the isomorphism
//!   criterion derived from the two layers above.
//! * [`walters`] — floating-point realization of the Schwartz-space
//!   bimodule at a fixed fiber: module actions, inner products and the
//!   order-k integral transforms.
//!
//! Everything in `coeff`/`grp`/`tga`/`ktheory` is exact (big-rational
//! arithmetic); `walters` is the only module that touches `f64`.

pub mod coeff;
pub mod grp;
pub mod ktheory;
mod par;
pub mod tga;
pub mod walters;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group order {0}; expected 2, 3, 4 or 6")]
    UnsupportedOrder(u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cocycle mismatch: operands live over different cocycles")]
    CocycleMismatch,
    #[error("element is not unitary")]
    NotUnitary,
    #[error("grid mismatch: operands sampled on different grids")]
    GridMismatch,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("rational theta rejected: the isomorphism criterion requires an irrational theta")]
    RationalTheta,
    #[error("inconsistent block totals: {0} vs {1}")]
    InconsistentTotals(u64, u64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
