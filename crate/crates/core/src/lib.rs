//! Sparse truncated SVD: selecting a submatrix of bounded size that
//! maximizes the Ky Fan k-norm, together with its row-sparse PCA special
//! case.
//!
//! The crate provides dense numerical kernels ([`linalg`]), instance and
//! report types ([`model`]), three selection heuristics ([`selection`]),
//! greedy and local search ([`search`]), and exact solvers — brute-force
//! oracles, a Frobenius subproblem solver and branch-and-cut ([`exact`]).
//!
//! Everything numeric is generic over [`Scalar`]; the aliases below fix the
//! default `f64` precision used by the CLI.

// Index loops mirror the matrix arithmetic they implement.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exact;
pub mod linalg;
pub mod model;
pub mod parallel;
pub mod scalar;
pub mod search;
pub mod selection;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default-precision dense matrix.
pub type Matrix = linalg::DenseMatrix<f64>;
/// Default-precision spectral result.
pub type Spectral = linalg::SpectralResult<f64>;
/// Default-precision rectangular instance.
pub type Ssvd = model::SsvdInstance<f64>;
/// Default-precision principal-submatrix instance.
pub type Spca = model::SpcaInstance<f64>;

/// Single-precision variants.
pub type Matrix32 = linalg::DenseMatrix<f32>;
pub type Ssvd32 = model::SsvdInstance<f32>;
pub type Spca32 = model::SpcaInstance<f32>;
