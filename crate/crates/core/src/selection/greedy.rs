use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::rotation::conjugate_in_place;
use crate::mmf::{
    core_diagonal_project, KPointRotation, MmfFactorization, NestedSelection, SelectionLevel, SymmetricMatrix,
};

/// Angle that zeroes entry `(i, j)` under the core `[[c, -s], [s, c]]`.
fn jacobi_angle(aii: f64, ajj: f64, aij: f64) -> f64 {
    if aij == 0.0 {
        0.0
    } else {
        0.5 * f64::atan2(2.0 * aij, ajj - aii)
    }
}

struct Choice {
    score: f64,
    i: usize,
    j: usize,
    wavelet: usize,
    theta: f64,
}

/// Classic pairwise MMF: `L` Givens rotations, one wavelet per level.
///
/// Every active pair is rotated by its Jacobi angle; the pair and member
/// whose rotated row leaves the least off-diagonal energy within the active
/// set (and hence adds the least to the residual) is retired. Ties go to
/// the lexicographically smaller pair, then to the smaller index.
pub fn greedy_jacobi_mmf(a: &SymmetricMatrix, l: usize) -> Result<MmfFactorization> {
    let n = a.n();
    if l >= n {
        return Err(MmfError::InvalidParameter(format!("L = {l} must be below n = {n}")));
    }
    let mut m = a.as_matrix().clone();
    let mut active = vec![true; n];
    // gram[p][q] = Σ_{r active} m[p][r]·m[q][r]
    let mut gram = Matrix::from_fn(n, n, |p, q| crate::linalg::dot(m.row(p), m.row(q)));
    let mut levels = Vec::with_capacity(l);
    let mut rotations = Vec::with_capacity(l);

    for _ in 0..l {
        let idx: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        let mut best: Option<Choice> = None;
        for (pos, &i) in idx.iter().enumerate() {
            for &j in &idx[pos + 1..] {
                let (aii, ajj, aij) = (m[(i, i)], m[(j, j)], m[(i, j)]);
                let theta = jacobi_angle(aii, ajj, aij);
                let (s, c) = theta.sin_cos();
                // energies over active columns other than i and j
                let ei = gram[(i, i)] - aii * aii - aij * aij;
                let ej = gram[(j, j)] - ajj * ajj - aij * aij;
                let dij = gram[(i, j)] - aii * aij - aij * ajj;
                let new_i = (c * c * ei - 2.0 * c * s * dij + s * s * ej).max(0.0);
                let new_j = (s * s * ei + 2.0 * c * s * dij + c * c * ej).max(0.0);
                let (wavelet, energy) = if new_j < new_i { (j, new_j) } else { (i, new_i) };
                let score = 2.0 * energy;
                if best.as_ref().map_or(true, |b| score < b.score) {
                    best = Some(Choice {
                        score,
                        i,
                        j,
                        wavelet,
                        theta,
                    });
                }
            }
        }
        let choice = best.expect("at least two active indices");
        let u = KPointRotation::givens(n, choice.i, choice.j, choice.theta)?;
        conjugate_in_place(&mut m, u.support(), u.core());
        // exact zero for the annihilated pair
        m[(choice.i, choice.j)] = 0.0;
        m[(choice.j, choice.i)] = 0.0;

        let t = choice.wavelet;
        active[t] = false;
        // columns i, j rotate together, which leaves Σ over them invariant for
        // other row pairs; only the retired column must be subtracted
        for p in 0..n {
            let mp = m[(p, t)];
            if mp != 0.0 {
                for q in 0..n {
                    gram[(p, q)] -= mp * m[(q, t)];
                }
            }
        }
        for r in [choice.i, choice.j] {
            for q in 0..n {
                let v: f64 = (0..n).filter(|&x| active[x]).map(|x| m[(r, x)] * m[(q, x)]).sum();
                gram[(r, q)] = v;
                gram[(q, r)] = v;
            }
        }
        log::debug!(
            "greedy jacobi: pair ({}, {}), wavelet {t}, residual +{:.3e}",
            choice.i,
            choice.j,
            choice.score
        );
        levels.push(SelectionLevel {
            wavelet_indices: vec![t],
            rotation_support: u.support().to_vec(),
        });
        rotations.push(u);
    }

    let sel = NestedSelection::new(n, 2, 1, levels)?;
    let rotated = SymmetricMatrix::from_symmetric_unchecked(m);
    let h = core_diagonal_project(&rotated, &sel.final_active())?;
    MmfFactorization::new(sel, rotations, h)
}
