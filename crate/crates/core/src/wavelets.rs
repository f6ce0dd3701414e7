//! Orthogonal wavelet bases read off a factorization, and graph-signal
//! transforms in them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::MmfFactorization;

pub const DEFAULT_SPARSITY_THRESHOLD: f64 = 1e-8;

/// Rows of `matrix` are the wavelets, indexed by coordinate: the mother
/// wavelet of level `ℓ` sits at row `T_ℓ`, the fathers at rows `S_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletBasis {
    pub n: usize,
    pub matrix: Matrix,
    /// `(row, level)`, levels counted from 1.
    pub mother_rows: Vec<(usize, usize)>,
    pub father_rows: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct MotherTag {
    row: usize,
    level: usize,
}

#[derive(Serialize, Deserialize)]
struct BasisTags {
    n: usize,
    mother_rows: Vec<MotherTag>,
    father_rows: Vec<usize>,
}

/// With `Q_ℓ = U_ℓ ⋯ U₁`, returns `Q_L`. Row `T_ℓ` of `Q_L` equals row `T_ℓ`
/// of `Q_ℓ` because later rotations never touch retired coordinates.
pub fn extract_basis(f: &MmfFactorization) -> Result<WaveletBasis> {
    let sel = f.selection();
    if sel.c() != 1 && sel.num_levels() > 0 {
        return Err(MmfError::Unsupported(format!(
            "wavelet extraction needs one wavelet per level, factorization has c = {}",
            sel.c()
        )));
    }
    let n = f.n();
    let mut q = Matrix::identity(n);
    for u in f.rotations() {
        let s = u.support();
        let old: Vec<Vec<f64>> = s.iter().map(|&r| q.row(r).to_vec()).collect();
        for (a, &r) in s.iter().enumerate() {
            let row = q.row_mut(r);
            row.fill(0.0);
            for (b, src) in old.iter().enumerate() {
                let w = u.core()[(a, b)];
                if w != 0.0 {
                    for (x, y) in row.iter_mut().zip(src) {
                        *x += w * y;
                    }
                }
            }
        }
    }
    let mother_rows = sel
        .levels()
        .iter()
        .enumerate()
        .flat_map(|(l, lvl)| lvl.wavelet_indices.iter().map(move |&t| (t, l + 1)))
        .collect();
    let basis = WaveletBasis {
        n,
        matrix: q,
        mother_rows,
        father_rows: sel.final_active(),
    };
    basis.check_orthogonal(1e-8)?;
    Ok(basis)
}

impl WaveletBasis {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: Matrix::identity(n),
            mother_rows: Vec::new(),
            father_rows: (0..n).collect(),
        }
    }

    /// `‖WᵀW − I‖_F`
    pub fn orthogonality_error(&self) -> f64 {
        self.matrix.orthogonality_error()
    }

    pub fn check_orthogonal(&self, tol: f64) -> Result<()> {
        let deviation = self.orthogonality_error();
        if deviation < tol {
            Ok(())
        } else {
            Err(MmfError::NotOrthogonal { deviation })
        }
    }

    /// Wavelet `row` as a signal on the vertices.
    pub fn wavelet(&self, row: usize) -> &[f64] {
        self.matrix.row(row)
    }

    /// JSON sidecar describing which rows are mothers and fathers.
    pub fn tags_json(&self) -> String {
        let tags = BasisTags {
            n: self.n,
            mother_rows: self.mother_rows.iter().map(|&(row, level)| MotherTag { row, level }).collect(),
            father_rows: self.father_rows.clone(),
        };
        serde_json::to_string_pretty(&tags).expect("plain data serializes")
    }

    /// Writes `<prefix>.mtx` (dense array) and `<prefix>.json` (row tags).
    pub fn write(&self, prefix: impl AsRef<Path>) -> Result<()> {
        let prefix = prefix.as_ref();
        crate::io::write_dense_array(prefix.with_extension("mtx"), &self.matrix)?;
        std::fs::write(prefix.with_extension("json"), self.tags_json())?;
        Ok(())
    }

    pub fn read(prefix: impl AsRef<Path>) -> Result<Self> {
        let prefix = prefix.as_ref();
        let matrix = crate::io::read_dense_array(prefix.with_extension("mtx"))?;
        let tags: BasisTags = serde_json::from_str(&std::fs::read_to_string(prefix.with_extension("json"))?)
            .map_err(|e| MmfError::Schema(e.to_string()))?;
        if matrix.rows() != tags.n || matrix.cols() != tags.n {
            return Err(MmfError::DimensionMismatch {
                expected: tags.n,
                got: matrix.rows(),
            });
        }
        if tags.mother_rows.len() + tags.father_rows.len() != tags.n {
            return Err(MmfError::Schema("mother and father rows must cover n rows".into()));
        }
        Ok(Self {
            n: tags.n,
            matrix,
            mother_rows: tags.mother_rows.iter().map(|t| (t.row, t.level)).collect(),
            father_rows: tags.father_rows,
        })
    }
}

/// Wavelet coefficients `W · signal`.
pub fn transform(w: &WaveletBasis, signal: &[f64]) -> Result<Vec<f64>> {
    w.matrix.matvec(signal)
}

/// `Wᵀ · coeffs`
pub fn inverse_transform(w: &WaveletBasis, coeffs: &[f64]) -> Result<Vec<f64>> {
    w.matrix.matvec_transposed(coeffs)
}

/// Fraction of basis entries with `|value| > threshold`.
pub fn sparsity(w: &WaveletBasis, threshold: f64) -> Result<f64> {
    nonzero_fraction(&w.matrix, threshold)
}

pub fn nonzero_fraction(m: &Matrix, threshold: f64) -> Result<f64> {
    if !(threshold >= 0.0) {
        return Err(MmfError::InvalidParameter(format!("threshold {threshold} must be >= 0")));
    }
    let total = m.rows() * m.cols();
    if total == 0 {
        return Ok(0.0);
    }
    let nz = m.as_slice().iter().filter(|v| v.abs() > threshold).count();
    Ok(nz as f64 / total as f64)
}
