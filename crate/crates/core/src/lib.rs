//! Learnable multiresolution matrix factorization.
//!
//! A symmetric matrix is compressed as `A ≈ U₁ᵀ ⋯ U_Lᵀ H U_L ⋯ U₁` with sparse
//! orthogonal rotations. Index choices come from evolutionary search
//! ([`evolution`]), rotation cores from descent on the Stiefel manifold
//! ([`stiefel`]). The rotations yield an orthogonal wavelet basis
//! ([`wavelets`]) that drives a spectral graph network ([`wnn`]).

pub mod baselines;
pub mod cli;
pub mod error;
pub mod evolution;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod mmf;
pub mod rng;
pub mod selection;
pub mod stiefel;
pub mod wavelets;
pub mod wnn;

pub use error::{MmfError, Result};
