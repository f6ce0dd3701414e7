use crate::error::{MmfError, Result};
use crate::linalg::{Lu, Matrix};

/// `W = G·Xᵀ − X·Gᵀ`, skew-symmetric by construction.
pub fn descent_direction(x: &Matrix, g: &Matrix) -> Result<Matrix> {
    if x.rows() != g.rows() || x.cols() != g.cols() {
        return Err(MmfError::DimensionMismatch {
            expected: x.rows(),
            got: g.rows(),
        });
    }
    let p = g.matmul(&x.transpose())?;
    let n = p.rows();
    Ok(Matrix::from_fn(n, n, |i, j| p[(i, j)] - p[(j, i)]))
}

fn shifted(w: &Matrix, t: f64) -> Matrix {
    let n = w.rows();
    Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } + t * w[(i, j)])
}

/// A point on the Cayley curve together with the factorized `(I + τ/2·W)`,
/// which the curve derivative reuses.
pub(crate) struct CurvePoint {
    pub(crate) y: Matrix,
    lhs: Lu,
}

impl CurvePoint {
    pub(crate) fn new(x: &Matrix, w: &Matrix, tau: f64) -> Result<Self> {
        if !w.is_square() || w.rows() != x.rows() {
            return Err(MmfError::DimensionMismatch {
                expected: x.rows(),
                got: w.rows(),
            });
        }
        let lhs = Lu::factor(&shifted(w, 0.5 * tau))?;
        let rhs = shifted(w, -0.5 * tau).matmul(x)?;
        let y = lhs.solve(&rhs)?;
        Ok(Self { y, lhs })
    }

    /// `Y′(τ) = −(I + τ/2·W)⁻¹ · W · (X + Y(τ)) / 2`
    pub(crate) fn derivative(&self, x: &Matrix, w: &Matrix) -> Result<Matrix> {
        let mid = x.add(&self.y)?.scale(-0.5);
        self.lhs.solve(&w.matmul(&mid)?)
    }
}

/// `Y(τ) = (I + τ/2·W)⁻¹ (I − τ/2·W) X`.
///
/// Fails with [`MmfError::Singular`] when `I + τ/2·W` cannot be inverted;
/// callers shrink `τ` and retry.
pub fn cayley_curve(x: &Matrix, w: &Matrix, tau: f64) -> Result<Matrix> {
    Ok(CurvePoint::new(x, w, tau)?.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(theta: f64) -> Matrix {
        let (s, c) = theta.sin_cos();
        Matrix::from_rows(&[[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    #[test]
    fn zero_direction_is_stationary() {
        let x = rotation(0.7);
        let y = cayley_curve(&x, &Matrix::zeros(3, 3), 5.0).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn quarter_turn_on_a_vector() {
        let x = Matrix::from_rows(&[[1.0], [0.0]]);
        let w = Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]);
        let y = cayley_curve(&x, &w, 2.0).unwrap();
        assert!((y[(0, 0)]).abs() < 1e-15);
        assert!((y[(1, 0)] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn curve_stays_orthogonal() {
        let x = rotation(1.3);
        let w = Matrix::from_rows(&[[0.0, 0.4, -1.2], [-0.4, 0.0, 0.8], [1.2, -0.8, 0.0]]);
        let y = cayley_curve(&x, &w, 0.3).unwrap();
        assert!(y.orthogonality_error() < 1e-10);
    }

    #[test]
    fn direction_is_skew_and_vanishes_on_self() {
        let x = rotation(0.2);
        let g = Matrix::from_rows(&[[1.0, 2.0, 0.5], [-1.0, 0.3, 0.0], [0.7, 0.1, -2.0]]);
        let w = descent_direction(&x, &g).unwrap();
        assert_eq!(w.add(&w.transpose()).unwrap().max_abs(), 0.0);
        assert_eq!(descent_direction(&x, &x).unwrap().max_abs(), 0.0);
        assert_eq!(descent_direction(&x, &Matrix::zeros(3, 3)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let x = rotation(0.5);
        let w = Matrix::from_rows(&[[0.0, 0.4, -1.2], [-0.4, 0.0, 0.8], [1.2, -0.8, 0.0]]);
        let tau = 0.4;
        let h = 1e-6;
        let d = CurvePoint::new(&x, &w, tau).unwrap().derivative(&x, &w).unwrap();
        let fd = cayley_curve(&x, &w, tau + h)
            .unwrap()
            .sub(&cayley_curve(&x, &w, tau - h).unwrap())
            .unwrap()
            .scale(0.5 / h);
        assert!(d.sub(&fd).unwrap().max_abs() < 1e-8);
    }
}
