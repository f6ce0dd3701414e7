//! Small dense linear algebra kernels.

mod dense;
mod eigen;
mod lu;

pub use dense::{dot, norm2, Matrix};
pub use eigen::{symmetric_eigen, symmetric_pinv, SymmetricEigen};
pub use lu::Lu;

/// Pulls a nearly orthogonal square matrix back onto the orthogonal group.
///
/// Newton–Schulz polar iterations converge quadratically from small drift;
/// for large drift the columns are re-orthonormalized by modified
/// Gram–Schmidt first.
pub fn reorthonormalize(m: &Matrix) -> Matrix {
    let mut x = if m.orthogonality_error() > 0.5 {
        gram_schmidt(m)
    } else {
        m.clone()
    };
    for _ in 0..8 {
        if x.orthogonality_error() < 1e-14 {
            break;
        }
        let n = x.cols();
        let xtx = x.transpose().matmul(&x).expect("square");
        let corr = Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { 3.0 } else { 0.0 };
            0.5 * (id - xtx[(i, j)])
        });
        x = x.matmul(&corr).expect("square");
    }
    x
}

fn gram_schmidt(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut v = m.column(j);
        for q in &cols {
            let p = dot(q, &v);
            v.iter_mut().zip(q).for_each(|(a, b)| *a -= p * b);
        }
        let mut nv = norm2(&v);
        if nv < 1e-12 {
            // replace a degenerate column with the first unit vector not in span
            for e in 0..n {
                let mut u = vec![0.0; n];
                u[e] = 1.0;
                for q in &cols {
                    let p = dot(q, &u);
                    u.iter_mut().zip(q).for_each(|(a, b)| *a -= p * b);
                }
                let nu = norm2(&u);
                if nu > 1e-6 {
                    v = u;
                    nv = nu;
                    break;
                }
            }
        }
        v.iter_mut().for_each(|a| *a /= nv);
        cols.push(v);
    }
    Matrix::from_fn(n, m.cols(), |i, j| cols[j][i])
}
