use crate::error::{MmfError, Result};
use crate::linalg::Matrix;

/// Asymmetry above which construction logs a warning before averaging.
pub const SYMMETRY_WARN_TOL: f64 = 1e-8;

/// Dense symmetric `n × n` matrix, the factorization target.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    inner: Matrix,
}

impl SymmetricMatrix {
    /// Symmetrizes `m` as `(M + Mᵀ)/2`.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(MmfError::DimensionMismatch {
                expected: m.rows(),
                got: m.cols(),
            });
        }
        if m.rows() == 0 {
            return Err(MmfError::InvalidParameter("matrix dimension must be at least 1".into()));
        }
        let asym = m.asymmetry();
        if asym > SYMMETRY_WARN_TOL {
            log::warn!("input matrix asymmetric by {asym:.3e}; symmetrizing");
        }
        let n = m.rows();
        let mut inner = m;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (inner[(i, j)] + inner[(j, i)]);
                inner[(i, j)] = avg;
                inner[(j, i)] = avg;
            }
        }
        Ok(Self { inner })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows))
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            inner: Matrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: Matrix::identity(n),
        }
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut inner = Matrix::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            inner[(i, i)] = v;
        }
        Self { inner }
    }

    /// Wraps a matrix the caller guarantees is exactly symmetric.
    pub(crate) fn from_symmetric_unchecked(inner: Matrix) -> Self {
        debug_assert!(inner.asymmetry() == 0.0, "asymmetry {}", inner.asymmetry());
        Self { inner }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.inner.row(i)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix {
        self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.get(i, i)).collect()
    }

    /// `‖self - other‖_F`
    pub fn distance(&self, other: &SymmetricMatrix) -> Result<f64> {
        Ok(self.inner.sub(&other.inner)?.frobenius_norm())
    }

    /// Restriction to rows and columns `idx`, in the given order.
    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), idx.len(), |a, b| self.get(idx[a], idx[b]))
    }
}
