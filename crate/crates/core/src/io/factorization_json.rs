use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::{CoreDiagonalMatrix, KPointRotation, MmfFactorization, NestedSelection, SelectionLevel};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelDoc {
    wavelet_indices: Vec<usize>,
    rotation_support: Vec<usize>,
    core: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorizationDoc {
    n: usize,
    #[serde(rename = "L")]
    l: usize,
    k: usize,
    c: usize,
    levels: Vec<LevelDoc>,
    core_indices: Vec<usize>,
    h_core: Vec<Vec<f64>>,
    h_diagonal: Vec<f64>,
}

fn rows_of(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn matrix_from(rows: &[Vec<f64>], size: usize, field: &str) -> Result<Matrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(MmfError::Schema(format!("`{field}` must be a {size}x{size} array of rows")));
    }
    Ok(Matrix::from_fn(size, size, |i, j| rows[i][j]))
}

pub fn factorization_to_json(f: &MmfFactorization) -> String {
    let sel = f.selection();
    let doc = FactorizationDoc {
        n: f.n(),
        l: sel.num_levels(),
        k: sel.k(),
        c: sel.c(),
        levels: sel
            .levels()
            .iter()
            .zip(f.rotations())
            .map(|(lvl, u)| LevelDoc {
                wavelet_indices: lvl.wavelet_indices.clone(),
                rotation_support: lvl.rotation_support.clone(),
                core: rows_of(u.core()),
            })
            .collect(),
        core_indices: f.h().core_indices().to_vec(),
        h_core: rows_of(f.h().core()),
        h_diagonal: f.h().diagonal().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Rejects documents with missing or mistyped fields, inconsistent sizes, and
/// cores that are not orthogonal.
pub fn factorization_from_json(text: &str) -> Result<MmfFactorization> {
    let doc: FactorizationDoc = serde_json::from_str(text).map_err(|e| MmfError::Schema(e.to_string()))?;
    if doc.levels.len() != doc.l {
        return Err(MmfError::Schema(format!("`L` is {} but `levels` has {} entries", doc.l, doc.levels.len())));
    }
    let mut levels = Vec::with_capacity(doc.l);
    let mut rotations = Vec::with_capacity(doc.l);
    for (i, lvl) in doc.levels.into_iter().enumerate() {
        let size = lvl.rotation_support.len();
        let core = matrix_from(&lvl.core, size, &format!("levels[{i}].core"))?;
        rotations.push(KPointRotation::new(doc.n, lvl.rotation_support.clone(), core)?);
        levels.push(SelectionLevel {
            wavelet_indices: lvl.wavelet_indices,
            rotation_support: lvl.rotation_support,
        });
    }
    let selection = NestedSelection::new(doc.n, doc.k, doc.c, levels)?;
    let h_core = matrix_from(&doc.h_core, doc.core_indices.len(), "h_core")?;
    if doc.h_diagonal.len() != doc.n {
        return Err(MmfError::Schema(format!("`h_diagonal` must have n = {} entries", doc.n)));
    }
    let h = CoreDiagonalMatrix::new(doc.n, doc.core_indices, h_core, doc.h_diagonal)?;
    MmfFactorization::new(selection, rotations, h)
}

pub fn write_factorization(path: impl AsRef<Path>, f: &MmfFactorization) -> Result<()> {
    std::fs::write(path, factorization_to_json(f))?;
    Ok(())
}

pub fn read_factorization(path: impl AsRef<Path>) -> Result<MmfFactorization> {
    factorization_from_json(&std::fs::read_to_string(path)?)
}
