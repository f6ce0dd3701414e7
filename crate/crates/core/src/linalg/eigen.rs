//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Only used by the Nyström pseudo-inverse and by basis comparisons; sizes
//! stay in the low hundreds.

use super::Matrix;
use crate::error::{MmfError, Result};

/// Eigen-decomposition `A = V · diag(values) · Vᵀ`, eigenvalues ascending,
/// eigenvectors stored as columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

const MAX_SWEEPS: usize = 100;

pub fn symmetric_eigen(a: &Matrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(MmfError::DimensionMismatch {
            expected: a.rows(),
            got: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let total = m.frobenius_norm_sq().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off <= 1e-30 * total {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors })
}

/// Moore–Penrose pseudo-inverse of a symmetric matrix; eigenvalues with
/// `|λ| <= rel_cutoff · max|λ|` are treated as zero.
pub fn symmetric_pinv(a: &Matrix, rel_cutoff: f64) -> Result<Matrix> {
    let eig = symmetric_eigen(a)?;
    let n = a.rows();
    let lmax = eig.values.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let cutoff = rel_cutoff * lmax;
    let mut out = Matrix::zeros(n, n);
    for (k, &l) in eig.values.iter().enumerate() {
        if l.abs() <= cutoff || l == 0.0 {
            continue;
        }
        let inv = 1.0 / l;
        for i in 0..n {
            let vik = eig.vectors[(i, k)] * inv;
            if vik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += vik * eig.vectors[(j, k)];
            }
        }
    }
    Ok(out)
}
