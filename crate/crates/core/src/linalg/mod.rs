//! Dense numerical kernels: truncated SVD, Ky Fan norms, Hadamard
//! construction, PSD checks and the symmetric augmentation that reduces
//! rectangular selection to a principal-submatrix problem.
//!
//! All operations are pure functions of immutable inputs and safe to call
//! concurrently.

pub mod eigen;
pub mod matrix;
pub mod svd;

pub use eigen::sym_eigen;
pub use matrix::DenseMatrix;
pub use svd::{singular_values, truncated_svd, SpectralResult};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest Hadamard order the generator will build.
pub const MAX_HADAMARD_ORDER: usize = 1 << 12;

/// Sum of the `k` largest singular values of `b`.
///
/// Equals the spectral norm at `k = 1` and the nuclear norm at
/// `k = min(rows, cols)`.
pub fn ky_fan_norm<T: Scalar>(b: &DenseMatrix<T>, k: usize) -> Result<T> {
    let nmin = b.rows().min(b.cols());
    if k == 0 || k > nmin {
        return Err(Error::Dimension(format!(
            "rank k={k} out of range 1..={nmin} for a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    let sigma = singular_values(b)?;
    Ok(sigma[..k].iter().copied().sum())
}

/// Largest singular value of `b`.
pub fn spectral_norm<T: Scalar>(b: &DenseMatrix<T>) -> Result<T> {
    ky_fan_norm(b, 1)
}

/// Hadamard matrix of the given order (a power of two), built by the
/// doubling recursion from `[1]`.
pub fn hadamard_of_order<T: Scalar>(order: usize) -> Result<DenseMatrix<T>> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::Invalid(format!(
            "hadamard order must be a positive power of two, got {order}"
        )));
    }
    if order > MAX_HADAMARD_ORDER {
        return Err(Error::SizeLimit(format!(
            "hadamard order {order} exceeds the limit {MAX_HADAMARD_ORDER}"
        )));
    }
    let mut h = DenseMatrix::<T>::identity(1);
    let mut size = 1usize;
    while size < order {
        let mut next = DenseMatrix::zeros(2 * size, 2 * size);
        for i in 0..size {
            for j in 0..size {
                let v = h.get(i, j);
                next.set(i, j, v);
                next.set(i, j + size, v);
                next.set(i + size, j, v);
                next.set(i + size, j + size, -v);
            }
        }
        h = next;
        size *= 2;
    }
    Ok(h)
}

/// The t-th matrix of the doubling recursion: `hadamard(1) = [1]`,
/// `hadamard(t)` has order `2^(t-1)`.
pub fn hadamard<T: Scalar>(t: usize) -> Result<DenseMatrix<T>> {
    if t == 0 {
        return Err(Error::Invalid("hadamard index t must be at least 1".into()));
    }
    if t > usize::BITS as usize {
        return Err(Error::SizeLimit(format!("hadamard index t={t} is out of range")));
    }
    hadamard_of_order(1usize << (t - 1))
}

/// Symmetric augmentation `[[0, A], [A^T, 0]] + sigma_1(A) I` together with
/// the shift `sigma_1(A)`.
///
/// The result is positive semidefinite; its spectrum is the shift plus and
/// minus the singular values of `A`, padded with the shift itself.
pub fn augment<T: Scalar>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, T)> {
    let m = a.rows();
    let n = a.cols();
    let shift = singular_values(a)?[0];
    let mut out = DenseMatrix::zeros(m + n, m + n);
    for i in 0..m {
        for j in 0..n {
            let v = a.get(i, j);
            out.set(i, m + j, v);
            out.set(m + j, i, v);
        }
    }
    for i in 0..(m + n) {
        out.set(i, i, shift);
    }
    Ok((out, shift))
}

/// True iff `b` is symmetric within `tol` and its smallest eigenvalue is at
/// least `-tol * max(1, lambda_max)`. Errors on non-square input.
pub fn psd_check<T: Scalar>(b: &DenseMatrix<T>, tol: T) -> Result<bool> {
    let defect = b.symmetry_defect()?;
    let scale = b.max_abs_entry().0.max(T::one());
    if defect > tol * scale {
        return Ok(false);
    }
    let (vals, _) = sym_eigen(b)?;
    let lambda_max = vals[0];
    let lambda_min = vals[vals.len() - 1];
    Ok(lambda_min >= -tol * lambda_max.max(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn ky_fan_identity_is_k() {
        let a = DenseMatrix::<f64>::identity(4);
        approx(ky_fan_norm(&a, 2).unwrap(), 2.0, 1e-12);
        approx(ky_fan_norm(&a, 4).unwrap(), 4.0, 1e-12);
    }

    #[test]
    fn ky_fan_all_ones_block() {
        // A rank-one s1 x s2 block of ones has the single singular value
        // sqrt(s1 s2), so every k gives the same norm.
        let a = DenseMatrix::new(3, 4, vec![1.0; 12]).unwrap();
        for k in 1..=3 {
            approx(ky_fan_norm(&a, k).unwrap(), 12f64.sqrt(), 1e-12);
        }
    }

    #[test]
    fn hadamard_first_three() {
        let h1 = hadamard::<f64>(1).unwrap();
        assert_eq!((h1.rows(), h1.cols()), (1, 1));
        assert_eq!(h1.get(0, 0), 1.0);

        let h2 = hadamard::<f64>(2).unwrap();
        assert_eq!(h2.entries(), &[1.0, 1.0, 1.0, -1.0]);

        let h3 = hadamard::<f64>(3).unwrap();
        assert_eq!((h3.rows(), h3.cols()), (4, 4));
        // H H^T = order * I.
        for i in 0..4 {
            for j in 0..4 {
                let d: f64 = (0..4).map(|l| h3.get(i, l) * h3.get(j, l)).sum();
                approx(d, if i == j { 4.0 } else { 0.0 }, 1e-12);
            }
        }
    }

    #[test]
    fn hadamard_rejects_bad_orders() {
        assert!(hadamard::<f64>(0).is_err());
        assert!(hadamard_of_order::<f64>(3).is_err());
        assert!(hadamard_of_order::<f64>(2 * MAX_HADAMARD_ORDER).is_err());
    }

    #[test]
    fn augment_zero_matrix() {
        let a = DenseMatrix::new(2, 3, vec![0.0; 6]).unwrap();
        let (bar, shift) = augment(&a).unwrap();
        assert_eq!(shift, 0.0);
        assert!(bar.entries().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn augment_scalar_case() {
        let a = DenseMatrix::new(1, 1, vec![2.0]).unwrap();
        let (bar, shift) = augment(&a).unwrap();
        approx(shift, 2.0, 1e-12);
        assert_eq!(bar.entries(), &[2.0, 2.0, 2.0, 2.0]);
        let (vals, _) = sym_eigen(&bar).unwrap();
        approx(vals[0], 4.0, 1e-12);
        approx(vals[1], 0.0, 1e-12);
    }

    #[test]
    fn psd_check_cases() {
        let id = DenseMatrix::<f64>::identity(4);
        assert!(psd_check(&id, 1e-12).unwrap());

        let skew = DenseMatrix::new(2, 2, vec![0.0, 1.0, -1.0, 0.0]).unwrap();
        assert!(!psd_check(&skew, 1e-3).unwrap());

        let rect = DenseMatrix::new(2, 3, vec![0.0; 6]).unwrap();
        assert!(psd_check(&rect, 1e-8).is_err());

        let neg = DenseMatrix::new(2, 2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(!psd_check(&neg, 1e-8).unwrap());
    }
}
