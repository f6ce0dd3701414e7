//! Nyström column-sampling approximation `A ≈ C W† Cᵀ`.

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{MmfError, Result};
use crate::linalg::{symmetric_pinv, Matrix};
use crate::mmf::SymmetricMatrix;
use crate::rng::seeded;

/// Relative eigenvalue cutoff used for `W†`.
pub const PINV_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NystromResult {
    pub selected_columns: Vec<usize>,
    pub error: f64,
}

/// Samples `d` columns uniformly without replacement and reports
/// `‖A − C W† Cᵀ‖_F`.
pub fn nystrom(a: &SymmetricMatrix, d: usize, seed: u64) -> Result<NystromResult> {
    let n = a.n();
    if d == 0 || d > n {
        return Err(MmfError::InvalidParameter(format!("Nyström sample size d = {d} outside 1..={n}")));
    }
    let mut all: Vec<usize> = (0..n).collect();
    let mut rng = seeded(seed);
    let (picked, _) = all.partial_shuffle(&mut rng, d);
    let idx = picked.to_vec();
    let error = nystrom_error(a, &idx)?;
    Ok(NystromResult {
        selected_columns: idx,
        error,
    })
}

/// Error of the Nyström approximation built on the given columns.
pub fn nystrom_error(a: &SymmetricMatrix, columns: &[usize]) -> Result<f64> {
    let n = a.n();
    if let Some(&bad) = columns.iter().find(|&&j| j >= n) {
        return Err(MmfError::IndexOutOfRange { index: bad, n });
    }
    let c = Matrix::from_fn(n, columns.len(), |i, j| a.get(i, columns[j]));
    let w = a.submatrix(columns);
    let w_pinv = symmetric_pinv(&w, PINV_CUTOFF)?;
    let approx = c.matmul(&w_pinv)?.matmul(&c.transpose())?;
    Ok(a.as_matrix().sub(&approx)?.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_sample_is_exact() {
        let a = crate::graph::normalized_laplacian(&crate::graph::karate_graph()).unwrap();
        let r = nystrom(&a, 34, 3).unwrap();
        assert!(r.error < 1e-8, "{}", r.error);
        let mut s = r.selected_columns.clone();
        s.sort_unstable();
        assert_eq!(s, (0..34).collect::<Vec<_>>());
    }

    #[test]
    fn rank_one_single_column() {
        let v = [0.3, -1.2, 0.7, 2.0, 0.5];
        let m = Matrix::from_fn(5, 5, |i, j| v[i] * v[j]);
        let a = SymmetricMatrix::new(m).unwrap();
        for seed in 0..5 {
            assert!(nystrom(&a, 1, seed).unwrap().error < 1e-9);
        }
    }

    #[test]
    fn bad_sizes() {
        let a = SymmetricMatrix::identity(3);
        assert!(nystrom(&a, 0, 0).is_err());
        assert!(nystrom(&a, 4, 0).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = crate::graph::normalized_laplacian(&crate::graph::karate_graph()).unwrap();
        assert_eq!(nystrom(&a, 8, 11).unwrap(), nystrom(&a, 8, 11).unwrap());
    }
}
