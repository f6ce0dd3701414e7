use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::rotation::{conjugate_in_place, conjugate_transpose_in_place};
use crate::mmf::{check_conformance, masked_residual, KPointRotation, NestedSelection, SymmetricMatrix};

/// The residual objective over a fixed selection, viewed as a function of
/// the rotation cores alone.
pub(crate) struct Problem<'a> {
    a: &'a Matrix,
    supports: Vec<&'a [usize]>,
    in_core: Vec<bool>,
}

impl<'a> Problem<'a> {
    pub(crate) fn new(a: &'a SymmetricMatrix, sel: &'a NestedSelection) -> Result<Self> {
        if a.n() != sel.n() {
            return Err(MmfError::DimensionMismatch {
                expected: sel.n(),
                got: a.n(),
            });
        }
        let mut in_core = vec![false; sel.n()];
        for s in sel.final_active() {
            in_core[s] = true;
        }
        Ok(Self {
            a: a.as_matrix(),
            supports: sel.levels().iter().map(|l| l.rotation_support.as_slice()).collect(),
            in_core,
        })
    }

    pub(crate) fn check_cores(&self, cores: &[Matrix]) -> Result<()> {
        if cores.len() != self.supports.len() {
            return Err(MmfError::InvalidSelection(format!(
                "{} cores for {} levels",
                cores.len(),
                self.supports.len()
            )));
        }
        for (core, s) in cores.iter().zip(&self.supports) {
            if core.rows() != s.len() || core.cols() != s.len() {
                return Err(MmfError::DimensionMismatch {
                    expected: s.len(),
                    got: core.rows(),
                });
            }
        }
        Ok(())
    }

    /// `A_L = U_L … U₁ A U₁ᵀ … U_Lᵀ`
    pub(crate) fn rotated(&self, cores: &[Matrix]) -> Matrix {
        let mut m = self.a.clone();
        for (core, s) in cores.iter().zip(&self.supports) {
            conjugate_in_place(&mut m, s, core);
        }
        m
    }

    pub(crate) fn value(&self, cores: &[Matrix]) -> f64 {
        masked_residual(&self.rotated(cores), &self.in_core)
    }

    /// Objective and its Euclidean gradient with respect to every core.
    ///
    /// Cores must be orthogonal: intermediate matrices are recovered by
    /// undoing rotations on the way back instead of being stored.
    pub(crate) fn value_and_gradient(&self, cores: &[Matrix]) -> (f64, Vec<Matrix>) {
        let mut m = self.rotated(cores);
        let n = m.rows();
        let value = masked_residual(&m, &self.in_core);

        let mut g = Matrix::from_fn(n, n, |i, j| {
            if i != j && !(self.in_core[i] && self.in_core[j]) {
                2.0 * m[(i, j)]
            } else {
                0.0
            }
        });

        let mut grads = vec![Matrix::zeros(0, 0); cores.len()];
        for (lvl, (core, s)) in cores.iter().zip(&self.supports).enumerate().rev() {
            grads[lvl] = level_gradient(&m, &g, s, core);
            conjugate_transpose_in_place(&mut m, s, core);
            conjugate_transpose_in_place(&mut g, s, core);
        }
        (value, grads)
    }
}

/// `2 · (G · A_ℓ · U)[I, I]` where `U = I ⊕_I O`.
fn level_gradient(a_l: &Matrix, g: &Matrix, support: &[usize], core: &Matrix) -> Matrix {
    let n = a_l.rows();
    let k = support.len();
    // (A_ℓ U)[:, s_b] = Σ_c A_ℓ[:, s_c] O[c][b], stored as k columns of length n
    let mut au = vec![0.0; k * n];
    for r in 0..n {
        let row = a_l.row(r);
        for b in 0..k {
            let mut acc = 0.0;
            for c in 0..k {
                acc += row[support[c]] * core[(c, b)];
            }
            au[b * n + r] = acc;
        }
    }
    Matrix::from_fn(k, k, |a, b| {
        let g_row = g.row(support[a]);
        let col = &au[b * n..(b + 1) * n];
        2.0 * g_row.iter().zip(col).map(|(x, y)| x * y).sum::<f64>()
    })
}

fn cores_of(rotations: &[KPointRotation]) -> Vec<Matrix> {
    rotations.iter().map(|u| u.core().clone()).collect()
}

/// `F(O₁, …, O_L)`: the residual norm of the fully rotated matrix with
/// respect to the selection's final active set.
pub fn objective(a: &SymmetricMatrix, sel: &NestedSelection, rotations: &[KPointRotation]) -> Result<f64> {
    check_conformance(sel, rotations)?;
    objective_from_cores(a, sel, &cores_of(rotations))
}

/// Same as [`objective`] but over raw cores, which need not be orthogonal.
/// Used for finite-difference checks.
pub fn objective_from_cores(a: &SymmetricMatrix, sel: &NestedSelection, cores: &[Matrix]) -> Result<f64> {
    let p = Problem::new(a, sel)?;
    p.check_cores(cores)?;
    Ok(p.value(cores))
}

/// `∂F/∂O_ℓ` for every level, by reverse-mode differentiation through the
/// chain of conjugations.
pub fn gradient(a: &SymmetricMatrix, sel: &NestedSelection, rotations: &[KPointRotation]) -> Result<Vec<Matrix>> {
    check_conformance(sel, rotations)?;
    let p = Problem::new(a, sel)?;
    Ok(p.value_and_gradient(&cores_of(rotations)).1)
}
