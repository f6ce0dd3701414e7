//! Core MMF data types: symmetric targets, sparse k-point rotations,
//! core-diagonal matrices, nested index selections, and factorizations,
//! together with the residual objective and reconstruction error.

mod core_diagonal;
mod factorization;
mod nested;
pub(crate) mod rotation;
mod symmetric;

pub use core_diagonal::{core_diagonal_project, residual_norm_sq, CoreDiagonalMatrix};
pub(crate) use core_diagonal::masked_residual;
pub use factorization::{assemble, factorization_error, rotate_forward, MmfFactorization};
pub(crate) use factorization::check_conformance;
pub use nested::{NestedSelection, SelectionLevel};
pub use rotation::{apply_rotation, KPointRotation, ORTHOGONALITY_TOL};
pub use symmetric::SymmetricMatrix;
