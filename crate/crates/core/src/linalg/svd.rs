//! Dense singular value decomposition via one-sided Jacobi rotations.
//!
//! The full decomposition is computed and then truncated; submatrices at
//! solver scale are at most a few hundred per side, so a robust dense
//! kernel beats an iterative one here. Singular values below
//! `RANK_CLAMP * sigma_max` are clamped to exactly zero so Ky Fan values of
//! padded or zero matrices come out exact.
//!
//! Within a cluster of (numerically) equal singular values the singular
//! vectors are only determined up to rotation. The kernel resolves this by
//! rebasing each cluster onto the orthonormal basis obtained from
//! Gram-Schmidt over coordinate projections, taken in index order. The
//! output is then a deterministic function of the input matrix alone, not
//! of the rotation schedule.

use crate::error::{Error, Result};
use crate::linalg::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Hard cap on Jacobi sweeps; exceeding it is a numeric error, never a
/// silent return.
pub const MAX_SWEEPS: usize = 100;

/// Relative threshold below which a column pair counts as orthogonal.
pub const JACOBI_TOL: f64 = 1e-12;

/// Singular values below this fraction of the largest are clamped to zero.
pub const RANK_CLAMP: f64 = 1e-12;

/// Relative gap under which adjacent singular values form one cluster for
/// basis canonicalization.
const CLUSTER_TOL: f64 = 1e-9;

/// Pivot threshold for the coordinate Gram-Schmidt pass. Coordinate
/// projections onto a cluster have total squared mass equal to the cluster
/// size, so genuine pivots are never this small.
const GS_PIVOT_TOL: f64 = 1e-6;

/// Top-k singular triplets of a matrix.
///
/// Singular values are nonincreasing, vectors are orthonormal columns, and
/// `A v_i = sigma_i u_i` holds to kernel accuracy.
#[derive(Debug, Clone)]
pub struct SpectralResult<T> {
    pub singular_values: Vec<T>,
    /// m x k, column i is the i-th left singular vector.
    pub left_vectors: DenseMatrix<T>,
    /// n x k, column i is the i-th right singular vector.
    pub right_vectors: DenseMatrix<T>,
}

/// Full SVD with `min(m, n)` triplets.
pub(crate) struct FullSvd<T> {
    pub sigma: Vec<T>,
    pub u: Vec<Vec<T>>,
    pub v: Vec<Vec<T>>,
}

/// Column-major working storage for a matrix factor.
type Columns<T> = Vec<Vec<T>>;

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// One-sided Jacobi on a tall matrix given as columns (`m >= n`).
/// Returns unsorted (work columns, v columns); `work[j] = sigma_j * u_j`.
///
/// Columns whose norm drops below machine noise relative to the matrix
/// scale are retired from the pair scan: they correspond to singular
/// values far under the rank clamp, and keeping them in play would stall
/// the relative convergence test on exactly parallel residuals.
fn jacobi_columns<T: Scalar>(
    mut work: Columns<T>,
    accumulate_v: bool,
) -> Result<(Columns<T>, Columns<T>)> {
    let n = work.len();
    let tol = T::cast(JACOBI_TOL).max(T::epsilon() * T::cast(100.0));
    let frob_sq: T = work.iter().map(|c| dot(c, c)).sum();
    let null_floor = {
        let rel = T::cast(1e-14).max(T::epsilon() * T::cast(10.0));
        rel * rel * frob_sq
    };
    let mut v: Columns<T> = if accumulate_v {
        (0..n)
            .map(|j| {
                let mut col = vec![T::zero(); n];
                col[j] = T::one();
                col
            })
            .collect()
    } else {
        Vec::new()
    };

    for sweep in 0..=MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&work[p], &work[p]);
                let beta = dot(&work[q], &work[q]);
                let gamma = dot(&work[p], &work[q]);
                if alpha <= null_floor || beta <= null_floor {
                    continue;
                }
                if gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                if sweep == MAX_SWEEPS {
                    return Err(Error::Numeric(format!(
                        "jacobi svd did not converge within {MAX_SWEEPS} sweeps"
                    )));
                }
                let zeta = (beta - alpha) / (T::cast(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let m = work[p].len();
                for i in 0..m {
                    let wp = work[p][i];
                    let wq = work[q][i];
                    work[p][i] = c * wp - s * wq;
                    work[q][i] = s * wp + c * wq;
                }
                if accumulate_v {
                    for i in 0..n {
                        let vp = v[p][i];
                        let vq = v[q][i];
                        v[p][i] = c * vp - s * vq;
                        v[q][i] = s * vp + c * vq;
                    }
                }
                rotated = true;
            }
        }
        if !rotated {
            return Ok((work, v));
        }
    }
    unreachable!("loop returns or errors before falling through")
}

fn columns_of<T: Scalar>(a: &DenseMatrix<T>) -> Vec<Vec<T>> {
    (0..a.cols()).map(|j| a.column(j)).collect()
}

/// Gram-Schmidt over the coordinate projections of a cluster basis.
///
/// `block` holds `g` orthonormal length-`dim` columns spanning the cluster
/// subspace. Returns a `g x g` orthogonal matrix `r` (as columns) so that
/// `block * r` is the canonical basis: column `i` is derived from the
/// projection of the i-th usable coordinate vector, with a positive pivot.
fn coordinate_gs_rotation<T: Scalar>(block: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    let g = block.len();
    let pivot_tol = T::cast(GS_PIVOT_TOL);
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(g);
    for j in 0..dim {
        if basis.len() == g {
            break;
        }
        // Coefficients of the projection of e_j in the cluster basis.
        let mut r: Vec<T> = block.iter().map(|col| col[j]).collect();
        for b in &basis {
            let c = dot(&r, b);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * *bi;
            }
        }
        let nrm = norm(&r);
        if nrm > pivot_tol {
            for ri in r.iter_mut() {
                *ri /= nrm;
            }
            basis.push(r);
        }
    }
    // Orthonormality of the block guarantees completion; guard anyway by
    // filling from unit vectors.
    let mut fill = 0usize;
    while basis.len() < g {
        let mut r = vec![T::zero(); g];
        r[fill] = T::one();
        fill += 1;
        for b in &basis {
            let c = dot(&r, b);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * *bi;
            }
        }
        let nrm = norm(&r);
        if nrm > T::cast(1e-12) {
            for ri in r.iter_mut() {
                *ri /= nrm;
            }
            basis.push(r);
        }
        if fill == g {
            break;
        }
    }
    basis
}

/// Replace `cols[lo..hi]` by their combination under rotation `r`.
fn apply_rotation<T: Scalar>(cols: &mut [Vec<T>], lo: usize, hi: usize, r: &[Vec<T>]) {
    let g = hi - lo;
    let dim = cols[lo].len();
    let mut rotated: Vec<Vec<T>> = Vec::with_capacity(g);
    for rc in r.iter().take(g) {
        let mut newcol = vec![T::zero(); dim];
        for (t, &coef) in rc.iter().enumerate() {
            for (nc, &src) in newcol.iter_mut().zip(&cols[lo + t]) {
                *nc += coef * src;
            }
        }
        rotated.push(newcol);
    }
    for (off, col) in rotated.into_iter().enumerate() {
        cols[lo + off] = col;
    }
}

/// Orthonormal completion against `existing` columns, scanning coordinate
/// vectors in index order.
fn complete_orthonormal<T: Scalar>(existing: &[Vec<T>], dim: usize, count: usize) -> Vec<Vec<T>> {
    let mut added: Vec<Vec<T>> = Vec::with_capacity(count);
    for j in 0..dim {
        if added.len() == count {
            break;
        }
        let mut r = vec![T::zero(); dim];
        r[j] = T::one();
        for b in existing.iter().chain(added.iter()) {
            let c = dot(&r, b);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * *bi;
            }
        }
        let nrm = norm(&r);
        if nrm > T::cast(0.5) {
            // e_j mostly outside the current span; a safe pivot.
            for ri in r.iter_mut() {
                *ri /= nrm;
            }
            added.push(r);
        }
    }
    // Second pass with a lower threshold if the greedy pass fell short.
    let mut j = 0usize;
    while added.len() < count && j < dim {
        let mut r = vec![T::zero(); dim];
        r[j] = T::one();
        j += 1;
        for b in existing.iter().chain(added.iter()) {
            let c = dot(&r, b);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * *bi;
            }
        }
        let nrm = norm(&r);
        if nrm > T::cast(1e-8) {
            for ri in r.iter_mut() {
                *ri /= nrm;
            }
            added.push(r);
        }
    }
    added
}

fn sign_fix<T: Scalar>(col: &mut [T]) -> bool {
    let mut best = T::zero();
    let mut at = 0usize;
    for (i, &v) in col.iter().enumerate() {
        if v.abs() > best {
            best = v.abs();
            at = i;
        }
    }
    if col[at] < T::zero() {
        for v in col.iter_mut() {
            *v = -*v;
        }
        true
    } else {
        false
    }
}

fn negate<T: Scalar>(col: &mut [T]) {
    for v in col.iter_mut() {
        *v = -*v;
    }
}

/// Full SVD of `a` with `min(m, n)` triplets, sorted nonincreasing,
/// clamped, cluster-canonicalized and sign-normalized.
pub(crate) fn full_svd<T: Scalar>(a: &DenseMatrix<T>) -> Result<FullSvd<T>> {
    if a.rows() < a.cols() {
        let t = full_svd(&a.transpose())?;
        return Ok(FullSvd { sigma: t.sigma, u: t.v, v: t.u });
    }
    let m = a.rows();
    let nmin = a.cols();

    let (work, v) = jacobi_columns(columns_of(a), true)?;

    // Column norms are the singular values; sort descending, ties by index.
    let mut sigma: Vec<T> = work.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..nmin).collect();
    order.sort_by(|&i, &j| {
        sigma[j].partial_cmp(&sigma[i]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j))
    });
    let work: Vec<Vec<T>> = order.iter().map(|&i| work[i].clone()).collect();
    let mut v: Vec<Vec<T>> = order.iter().map(|&i| v[i].clone()).collect();
    sigma = order.iter().map(|&i| sigma[i]).collect();

    let sigma_max = sigma[0];
    let clamp = T::cast(RANK_CLAMP) * sigma_max;
    for s in sigma.iter_mut() {
        if *s < clamp || *s <= T::zero() {
            *s = T::zero();
        }
    }

    let mut u: Vec<Vec<T>> = Vec::with_capacity(nmin);
    for (j, col) in work.iter().enumerate() {
        if sigma[j] > T::zero() {
            u.push(col.iter().map(|&x| x / sigma[j]).collect());
        } else {
            u.push(vec![T::zero(); m]);
        }
    }

    // Cluster boundaries over the sorted spectrum.
    let cluster_gap = T::cast(CLUSTER_TOL) * sigma_max;
    let mut lo = 0usize;
    while lo < nmin {
        let mut hi = lo + 1;
        while hi < nmin && sigma[hi - 1] - sigma[hi] <= cluster_gap {
            hi += 1;
        }
        if sigma[lo] == T::zero() {
            // Null cluster: canonicalize V alone; U columns are rebuilt by
            // completion below.
            if hi - lo >= 2 {
                let r = coordinate_gs_rotation(&v[lo..hi], a.cols());
                apply_rotation(&mut v, lo, hi, &r);
            }
        } else if hi - lo >= 2 {
            let r = coordinate_gs_rotation(&v[lo..hi], a.cols());
            apply_rotation(&mut v, lo, hi, &r);
            apply_rotation(&mut u, lo, hi, &r);
        }
        lo = hi;
    }

    // Complete left vectors for zero singular values.
    let rank = sigma.iter().filter(|s| **s > T::zero()).count();
    if rank < nmin {
        let completion = complete_orthonormal(&u[..rank], m, nmin - rank);
        for (off, col) in completion.into_iter().enumerate() {
            u[rank + off] = col;
        }
    }

    // Deterministic signs: pair flip keyed on the right vector for nonzero
    // sigma, independent flips on the null part.
    for j in 0..nmin {
        if sigma[j] > T::zero() {
            if sign_fix(&mut v[j]) {
                negate(&mut u[j]);
            }
        } else {
            sign_fix(&mut v[j]);
            sign_fix(&mut u[j]);
        }
    }

    Ok(FullSvd { sigma, u, v })
}

/// All `min(m, n)` singular values, sorted nonincreasing and clamped.
/// Skips vector accumulation.
pub fn singular_values<T: Scalar>(a: &DenseMatrix<T>) -> Result<Vec<T>> {
    let cols = if a.rows() < a.cols() {
        columns_of(&a.transpose())
    } else {
        columns_of(a)
    };
    let (work, _) = jacobi_columns(cols, false)?;
    let mut sigma: Vec<T> = work.iter().map(|c| norm(c)).collect();
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    let clamp = T::cast(RANK_CLAMP) * sigma[0];
    for s in sigma.iter_mut() {
        if *s < clamp {
            *s = T::zero();
        }
    }
    Ok(sigma)
}

/// Top-k singular triplets of `b`.
///
/// If `rank(b) < k` the trailing singular values are exactly zero and
/// their vectors an orthonormal completion.
pub fn truncated_svd<T: Scalar>(b: &DenseMatrix<T>, k: usize) -> Result<SpectralResult<T>> {
    let nmin = b.rows().min(b.cols());
    if k == 0 || k > nmin {
        return Err(Error::Dimension(format!(
            "rank k={k} out of range 1..={nmin} for a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    let full = full_svd(b)?;
    let m = b.rows();
    let n = b.cols();
    let mut left = DenseMatrix::zeros(m, k);
    let mut right = DenseMatrix::zeros(n, k);
    for j in 0..k {
        for i in 0..m {
            left.set(i, j, full.u[j][i]);
        }
        for i in 0..n {
            right.set(i, j, full.v[j][i]);
        }
    }
    Ok(SpectralResult {
        singular_values: full.sigma[..k].to_vec(),
        left_vectors: left,
        right_vectors: right,
    })
}
