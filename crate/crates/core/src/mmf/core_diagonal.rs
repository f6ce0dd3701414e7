use crate::error::{MmfError, Result};
use crate::linalg::Matrix;

use super::SymmetricMatrix;

/// A matrix that is diagonal except for a dense symmetric block on the
/// `core_indices × core_indices` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreDiagonalMatrix {
    n: usize,
    core_indices: Vec<usize>,
    core: Matrix,
    diagonal: Vec<f64>,
}

impl CoreDiagonalMatrix {
    /// `diagonal` has length `n`; its entries at core indices are ignored in
    /// favour of the core block's diagonal.
    pub fn new(n: usize, core_indices: Vec<usize>, core: Matrix, diagonal: Vec<f64>) -> Result<Self> {
        check_index_set(n, &core_indices)?;
        if core_indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MmfError::InvalidSelection(
                "core indices must be strictly increasing".into(),
            ));
        }
        let d = core_indices.len();
        if core.rows() != d || core.cols() != d {
            return Err(MmfError::DimensionMismatch {
                expected: d,
                got: core.rows(),
            });
        }
        if diagonal.len() != n {
            return Err(MmfError::DimensionMismatch {
                expected: n,
                got: diagonal.len(),
            });
        }
        let asym = core.asymmetry();
        if asym > 1e-12 {
            return Err(MmfError::InvalidParameter(format!(
                "core block is not symmetric (asymmetry {asym:.3e})"
            )));
        }
        let mut diagonal = diagonal;
        for (a, &s) in core_indices.iter().enumerate() {
            diagonal[s] = core[(a, a)];
        }
        Ok(Self {
            n,
            core_indices,
            core,
            diagonal,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn core_indices(&self) -> &[usize] {
        &self.core_indices
    }

    pub fn core(&self) -> &Matrix {
        &self.core
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn to_dense(&self) -> SymmetricMatrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (i, &d) in self.diagonal.iter().enumerate() {
            m[(i, i)] = d;
        }
        for (a, &sa) in self.core_indices.iter().enumerate() {
            for (b, &sb) in self.core_indices.iter().enumerate() {
                m[(sa, sb)] = self.core[(a, b)];
            }
        }
        SymmetricMatrix::new(m).expect("core-diagonal materialization is square and non-empty")
    }
}

pub(crate) fn check_index_set(n: usize, idx: &[usize]) -> Result<()> {
    if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
        return Err(MmfError::IndexOutOfRange { index: bad, n });
    }
    Ok(())
}

fn membership(n: usize, s_l: &[usize]) -> Result<Vec<bool>> {
    check_index_set(n, s_l)?;
    let mut mask = vec![false; n];
    for &s in s_l {
        mask[s] = true;
    }
    Ok(mask)
}

/// Squared residual norm: the sum of `b_ij²` over `i ≠ j` with `(i, j)`
/// outside `S × S`.
pub fn residual_norm_sq(b: &SymmetricMatrix, s_l: &[usize]) -> Result<f64> {
    let in_core = membership(b.n(), s_l)?;
    Ok(masked_residual(b.as_matrix(), &in_core))
}

pub(crate) fn masked_residual(b: &Matrix, in_core: &[bool]) -> f64 {
    let n = b.rows();
    let mut acc = 0.0;
    for i in 0..n {
        let row = b.row(i);
        if in_core[i] {
            for (j, &v) in row.iter().enumerate() {
                if j != i && !in_core[j] {
                    acc += v * v;
                }
            }
        } else {
            for (j, &v) in row.iter().enumerate() {
                if j != i {
                    acc += v * v;
                }
            }
        }
    }
    acc
}

/// Keeps the diagonal and the `S × S` block of `b`, zeroing everything else.
pub fn core_diagonal_project(b: &SymmetricMatrix, s_l: &[usize]) -> Result<CoreDiagonalMatrix> {
    check_index_set(b.n(), s_l)?;
    let mut core_indices = s_l.to_vec();
    core_indices.sort_unstable();
    core_indices.dedup();
    let core = b.submatrix(&core_indices);
    CoreDiagonalMatrix::new(b.n(), core_indices, core, b.diagonal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_b() -> SymmetricMatrix {
        SymmetricMatrix::from_rows(&[[2.0, 1.0, 0.0], [1.0, 2.0, 3.0], [0.0, 3.0, 5.0]]).unwrap()
    }

    #[test]
    fn residual_examples() {
        let b = example_b();
        assert_eq!(residual_norm_sq(&b, &[0, 1]).unwrap(), 18.0);
        assert_eq!(residual_norm_sq(&b, &[0, 1, 2]).unwrap(), 0.0);
        assert_eq!(residual_norm_sq(&SymmetricMatrix::from_diagonal(&[1.0, 2.0]), &[0]).unwrap(), 0.0);
        assert!(matches!(residual_norm_sq(&b, &[3]), Err(MmfError::IndexOutOfRange { .. })));
    }

    #[test]
    fn projection_of_core_diagonal_example_is_identity() {
        let h = SymmetricMatrix::from_rows(&[
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 2.0, 0.0, 3.0, 0.0],
            [0.0, 0.0, 4.0, 0.0, 0.0],
            [0.0, 3.0, 0.0, 5.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 6.0],
        ])
        .unwrap();
        let p = core_diagonal_project(&h, &[1, 3]).unwrap();
        assert_eq!(p.to_dense(), h);
        assert_eq!(p.core(), &Matrix::from_rows(&[[2.0, 3.0], [3.0, 5.0]]));
        assert_eq!(residual_norm_sq(&h, &[1, 3]).unwrap(), 0.0);
    }

    #[test]
    fn projection_zeroes_off_core() {
        let a = SymmetricMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert_eq!(core_diagonal_project(&a, &[0]).unwrap().to_dense(), SymmetricMatrix::from_diagonal(&[2.0, 2.0]));
        assert_eq!(core_diagonal_project(&a, &[0, 1]).unwrap().to_dense(), a);
    }

    #[test]
    fn projection_distance_equals_residual() {
        let b = example_b();
        for s in [vec![], vec![0], vec![1, 2], vec![0, 2]] {
            let p = core_diagonal_project(&b, &s).unwrap().to_dense();
            let d2 = b.distance(&p).unwrap().powi(2);
            assert!((d2 - residual_norm_sq(&b, &s).unwrap()).abs() < 1e-12);
        }
    }
}
