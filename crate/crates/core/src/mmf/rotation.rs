use crate::error::{MmfError, Result};
use crate::linalg::{reorthonormalize, Matrix};

use super::SymmetricMatrix;

/// Tolerance on `‖OᵀO - I‖_F` for accepting a rotation core.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Elementary rotation of order `k`: the identity on `n` coordinates except
/// on `support`, where it acts as the orthogonal `k × k` core.
///
/// Stored sparsely; [`KPointRotation::to_dense`] exists for oracle checks.
#[derive(Debug, Clone, PartialEq)]
pub struct KPointRotation {
    n: usize,
    support: Vec<usize>,
    core: Matrix,
}

impl KPointRotation {
    pub fn new(n: usize, support: Vec<usize>, core: Matrix) -> Result<Self> {
        validate_support(n, &support)?;
        if core.rows() != support.len() || core.cols() != support.len() {
            return Err(MmfError::DimensionMismatch {
                expected: support.len(),
                got: core.rows().max(core.cols()),
            });
        }
        let deviation = core.orthogonality_error();
        if !(deviation <= ORTHOGONALITY_TOL) {
            return Err(MmfError::NotOrthogonal { deviation });
        }
        Ok(Self { n, support, core })
    }

    /// Like [`KPointRotation::new`] but re-orthonormalizes a drifted core
    /// instead of rejecting it.
    pub fn new_corrected(n: usize, support: Vec<usize>, core: Matrix) -> Result<Self> {
        let core = if core.orthogonality_error() > ORTHOGONALITY_TOL {
            reorthonormalize(&core)
        } else {
            core
        };
        Self::new(n, support, core)
    }

    pub fn identity(n: usize, support: Vec<usize>) -> Result<Self> {
        let k = support.len();
        Self::new(n, support, Matrix::identity(k))
    }

    /// Givens rotation on coordinates `(i, j)`, `i < j`, with core
    /// `[[cos θ, -sin θ], [sin θ, cos θ]]`.
    pub fn givens(n: usize, i: usize, j: usize, theta: f64) -> Result<Self> {
        let (s, c) = theta.sin_cos();
        let (support, core) = if i < j {
            (vec![i, j], Matrix::from_rows(&[[c, -s], [s, c]]))
        } else {
            (vec![j, i], Matrix::from_rows(&[[c, s], [-s, c]]))
        };
        Self::new(n, support, core)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn core(&self) -> &Matrix {
        &self.core
    }

    pub fn transpose(&self) -> KPointRotation {
        KPointRotation {
            n: self.n,
            support: self.support.clone(),
            core: self.core.transpose(),
        }
    }

    /// Dense `n × n` materialization.
    pub fn to_dense(&self) -> Matrix {
        let mut u = Matrix::identity(self.n);
        for (a, &sa) in self.support.iter().enumerate() {
            for (b, &sb) in self.support.iter().enumerate() {
                u[(sa, sb)] = self.core[(a, b)];
            }
        }
        u
    }
}

pub(crate) fn validate_support(n: usize, support: &[usize]) -> Result<()> {
    if support.len() < 2 || support.len() > n {
        return Err(MmfError::InvalidSelection(format!(
            "rotation order {} must lie in [2, {n}]",
            support.len()
        )));
    }
    if let Some(&bad) = support.iter().find(|&&s| s >= n) {
        return Err(MmfError::IndexOutOfRange { index: bad, n });
    }
    if support.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MmfError::InvalidSelection(format!(
            "rotation support {support:?} must be strictly increasing"
        )));
    }
    Ok(())
}

/// `M ← U M Uᵀ` in place, where `U = I ⊕_support core`.
///
/// Touches only the supported rows and columns. `M` must be symmetric; the
/// result is kept exactly symmetric.
pub(crate) fn conjugate_in_place(m: &mut Matrix, support: &[usize], core: &Matrix) {
    let n = m.rows();
    let k = support.len();
    let mut buf = vec![0.0; k * n];

    // rows: M[s_a, :] ← Σ_b O[a][b] M[s_b, :]
    for a in 0..k {
        let dst = &mut buf[a * n..(a + 1) * n];
        for b in 0..k {
            let o = core[(a, b)];
            if o == 0.0 {
                continue;
            }
            for (d, &x) in dst.iter_mut().zip(m.row(support[b])) {
                *d += o * x;
            }
        }
    }
    for a in 0..k {
        m.row_mut(support[a]).copy_from_slice(&buf[a * n..(a + 1) * n]);
    }

    // columns: M[:, s_a] ← Σ_b O[a][b] M[:, s_b]
    let mut gathered = vec![0.0; k];
    for i in 0..n {
        let row = m.row_mut(i);
        for (g, &s) in gathered.iter_mut().zip(support) {
            *g = row[s];
        }
        for a in 0..k {
            let mut acc = 0.0;
            for b in 0..k {
                acc += core[(a, b)] * gathered[b];
            }
            row[support[a]] = acc;
        }
    }

    for a in 0..k {
        for b in (a + 1)..k {
            let (sa, sb) = (support[a], support[b]);
            let avg = 0.5 * (m[(sa, sb)] + m[(sb, sa)]);
            m[(sa, sb)] = avg;
            m[(sb, sa)] = avg;
        }
    }
}

/// `M ← Uᵀ M U`, the inverse conjugation.
pub(crate) fn conjugate_transpose_in_place(m: &mut Matrix, support: &[usize], core: &Matrix) {
    conjugate_in_place(m, support, &core.transpose());
}

/// Returns `U · A · Uᵀ`.
pub fn apply_rotation(a: &SymmetricMatrix, u: &KPointRotation) -> Result<SymmetricMatrix> {
    if u.n() != a.n() {
        return Err(MmfError::DimensionMismatch {
            expected: a.n(),
            got: u.n(),
        });
    }
    let mut m = a.as_matrix().clone();
    conjugate_in_place(&mut m, u.support(), u.core());
    Ok(SymmetricMatrix::from_symmetric_unchecked(m))
}
