use crate::error::{MmfError, Result};

use super::rotation::{conjugate_in_place, conjugate_transpose_in_place};
use super::{CoreDiagonalMatrix, KPointRotation, NestedSelection, SymmetricMatrix};

/// `A ≈ U₁ᵀ … U_Lᵀ · H · U_L … U₁` with sparse rotations and an
/// `S_L`-core-diagonal `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct MmfFactorization {
    selection: NestedSelection,
    rotations: Vec<KPointRotation>,
    h: CoreDiagonalMatrix,
}

impl MmfFactorization {
    pub fn new(
        selection: NestedSelection,
        rotations: Vec<KPointRotation>,
        h: CoreDiagonalMatrix,
    ) -> Result<Self> {
        check_conformance(&selection, &rotations)?;
        if h.n() != selection.n() {
            return Err(MmfError::DimensionMismatch {
                expected: selection.n(),
                got: h.n(),
            });
        }
        if h.core_indices() != selection.final_active().as_slice() {
            return Err(MmfError::InvalidSelection(
                "H core indices differ from the final active set".into(),
            ));
        }
        Ok(Self {
            selection,
            rotations,
            h,
        })
    }

    pub fn n(&self) -> usize {
        self.selection.n()
    }

    pub fn selection(&self) -> &NestedSelection {
        &self.selection
    }

    pub fn rotations(&self) -> &[KPointRotation] {
        &self.rotations
    }

    pub fn h(&self) -> &CoreDiagonalMatrix {
        &self.h
    }

    /// `U₁ᵀ … U_Lᵀ · H · U_L … U₁`
    pub fn assemble(&self) -> SymmetricMatrix {
        let mut m = self.h.to_dense().into_matrix();
        for u in self.rotations.iter().rev() {
            conjugate_transpose_in_place(&mut m, u.support(), u.core());
        }
        SymmetricMatrix::from_symmetric_unchecked(m)
    }
}

/// Checks that rotation `ℓ` acts on exactly the support chosen at level `ℓ`.
pub(crate) fn check_conformance(sel: &NestedSelection, rotations: &[KPointRotation]) -> Result<()> {
    if rotations.len() != sel.num_levels() {
        return Err(MmfError::InvalidSelection(format!(
            "{} rotations for {} levels",
            rotations.len(),
            sel.num_levels()
        )));
    }
    for (lvl, (u, level)) in rotations.iter().zip(sel.levels()).enumerate() {
        if u.n() != sel.n() {
            return Err(MmfError::DimensionMismatch {
                expected: sel.n(),
                got: u.n(),
            });
        }
        if u.support() != level.rotation_support.as_slice() {
            return Err(MmfError::InvalidSelection(format!(
                "rotation {lvl} support {:?} differs from level support {:?}",
                u.support(),
                level.rotation_support
            )));
        }
    }
    Ok(())
}

/// `U_L … U₁ · A · U₁ᵀ … U_Lᵀ`
pub fn rotate_forward(a: &SymmetricMatrix, rotations: &[KPointRotation]) -> Result<SymmetricMatrix> {
    let mut m = a.as_matrix().clone();
    for u in rotations {
        if u.n() != a.n() {
            return Err(MmfError::DimensionMismatch {
                expected: a.n(),
                got: u.n(),
            });
        }
        conjugate_in_place(&mut m, u.support(), u.core());
    }
    Ok(SymmetricMatrix::from_symmetric_unchecked(m))
}

pub fn assemble(f: &MmfFactorization) -> SymmetricMatrix {
    f.assemble()
}

/// `‖A - assemble(f)‖_F`
pub fn factorization_error(a: &SymmetricMatrix, f: &MmfFactorization) -> Result<f64> {
    if a.n() != f.n() {
        return Err(MmfError::DimensionMismatch {
            expected: a.n(),
            got: f.n(),
        });
    }
    a.distance(&f.assemble())
}
