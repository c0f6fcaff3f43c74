//! Symmetric eigendecomposition via cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::linalg::matrix::DenseMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;
const EIGEN_TOL: f64 = 1e-13;

/// Eigenvalues (signed, nonincreasing) and orthonormal eigenvectors of a
/// symmetric matrix. Column `j` of the returned matrix is the eigenvector
/// for the j-th eigenvalue.
pub fn sym_eigen<T: Scalar>(a: &DenseMatrix<T>) -> Result<(Vec<T>, DenseMatrix<T>)> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut w = a.clone();
    let mut v = DenseMatrix::<T>::identity(n);
    let scale = a.frobenius_sq().sqrt();
    let threshold = T::cast(EIGEN_TOL) * scale.max(T::one());

    for sweep in 0..=MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w.get(p, q);
                if apq.abs() <= threshold {
                    continue;
                }
                if sweep == MAX_SWEEPS {
                    return Err(Error::Numeric(format!(
                        "jacobi eigendecomposition did not converge within {MAX_SWEEPS} sweeps"
                    )));
                }
                let app = w.get(p, p);
                let aqq = w.get(q, q);
                let theta = (aqq - app) / (T::cast(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                for i in 0..n {
                    let wip = w.get(i, p);
                    let wiq = w.get(i, q);
                    w.set(i, p, c * wip - s * wiq);
                    w.set(i, q, s * wip + c * wiq);
                }
                for j in 0..n {
                    let wpj = w.get(p, j);
                    let wqj = w.get(q, j);
                    w.set(p, j, c * wpj - s * wqj);
                    w.set(q, j, s * wpj + c * wqj);
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| w.get(i, i)).collect();
    order.sort_by(|&i, &j| {
        diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j))
    });
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_j, v.get(i, old_j));
        }
    }
    Ok((values, vectors))
}
