//! One-shot selection heuristics.
//!
//! Three surrogate criteria stand in for the Ky Fan objective: total
//! squared mass (solved exactly by the Frobenius subproblem solver),
//! per-column/per-row scans, and trimmed top singular vectors. Each has a
//! proven worst-case ratio against the true optimum, and each carries a
//! principal-submatrix variant for the PSD case.
//!
//! Every argmax over "largest absolute entries" breaks ties to the
//! smallest index so repeated runs are identical.

use crate::error::{Error, Result};
use crate::exact::FrobeniusSolver;
use crate::linalg::{ky_fan_norm, truncated_svd, DenseMatrix};
use crate::model::{Selection, SolveReport, SpcaInstance, SsvdInstance};
use crate::parallel::map_indexed;
use crate::scalar::Scalar;
use std::time::Instant;

/// Indices of the `count` largest values by absolute value, ties to the
/// smallest index. Returned sorted ascending.
///
/// Magnitudes within `1e-12` of each other relative to the largest count
/// as tied: entries of computed singular vectors that are equal on paper
/// differ by a few ulps, and bitwise comparison would turn that noise into
/// an arbitrary selection.
pub(crate) fn top_abs_indices<T: Scalar>(values: &[T], count: usize) -> Vec<usize> {
    debug_assert!(count <= values.len());
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| {
        values[j]
            .abs()
            .partial_cmp(&values[i].abs())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let tol = values[idx[0]].abs() * T::cast(1e-12);
    let mut lo = 0;
    while lo < idx.len() {
        let mut hi = lo + 1;
        while hi < idx.len() && values[idx[hi - 1]].abs() - values[idx[hi]].abs() <= tol {
            hi += 1;
        }
        idx[lo..hi].sort_unstable();
        lo = hi;
    }
    let mut take = idx[..count].to_vec();
    take.sort_unstable();
    take
}

/// Ky Fan norm with the rank clamped to the submatrix shape.
pub(crate) fn ky_fan_clamped<T: Scalar>(b: &DenseMatrix<T>, k: usize) -> Result<T> {
    ky_fan_norm(b, k.min(b.rows()).min(b.cols()))
}

/// Column two-norms of the row-restricted submatrix `a[rows, :]`.
fn restricted_col_norms<T: Scalar>(a: &DenseMatrix<T>, rows: &[usize]) -> Vec<T> {
    let mut norms = vec![T::zero(); a.cols()];
    for &i in rows {
        for (j, n) in norms.iter_mut().enumerate() {
            let v = a.get(i, j);
            *n += v * v;
        }
    }
    for n in norms.iter_mut() {
        *n = n.sqrt();
    }
    norms
}

/// Row two-norms of the column-restricted submatrix `a[:, cols]`.
fn restricted_row_norms<T: Scalar>(a: &DenseMatrix<T>, cols: &[usize]) -> Vec<T> {
    (0..a.rows())
        .map(|i| cols.iter().map(|&j| a.get(i, j) * a.get(i, j)).sum::<T>().sqrt())
        .collect()
}

/// Best candidate by Ky Fan value; ties keep the earliest candidate.
fn best_candidate<T: Scalar>(
    inst: &SsvdInstance<T>,
    candidates: &[(Vec<usize>, Vec<usize>)],
) -> Result<(usize, T)> {
    let a = inst.matrix();
    let k = inst.k();
    let values = map_indexed(candidates.len(), |c| {
        let (rows, cols) = &candidates[c];
        a.submatrix(rows, cols).and_then(|sub| ky_fan_clamped(&sub, k))
    });
    let mut best = 0usize;
    let mut best_val = None;
    for (c, v) in values.into_iter().enumerate() {
        let v = v?;
        if best_val.is_none_or(|b| v > b) {
            best_val = Some(v);
            best = c;
        }
    }
    Ok((best, best_val.expect("at least one candidate")))
}

/// Selection by maximum squared mass: delegate the joint subset problem to
/// the exact Frobenius solver, then score the winner by Ky Fan norm.
pub fn select_frobenius<T: Scalar>(
    inst: &SsvdInstance<T>,
    solver: &FrobeniusSolver,
) -> Result<SolveReport> {
    let start = Instant::now();
    let outcome = solver.solve(inst.matrix(), inst.s1(), inst.s2())?;
    let sub = inst.matrix().submatrix(outcome.selection.rows(), outcome.selection.cols())?;
    let objective = ky_fan_clamped(&sub, inst.k())?;
    let mut report = SolveReport::new("frobenius", objective.report(), outcome.selection);
    report.nodes = outcome.nodes;
    report.converged = outcome.optimal;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Selection by per-column and per-row scans: each column seeds a row set
/// from its largest absolute entries, each row the transpose; all `m + n`
/// candidates are scored and the best kept.
pub fn select_rowcol<T: Scalar>(inst: &SsvdInstance<T>) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let (m, n) = (a.rows(), a.cols());
    let (s1, s2) = (inst.s1(), inst.s2());

    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(m + n);
    for j in 0..n {
        let rows = top_abs_indices(&a.column(j), s1);
        let cols = top_abs_indices(&restricted_col_norms(a, &rows), s2);
        candidates.push((rows, cols));
    }
    for i in 0..m {
        let cols = top_abs_indices(a.row(i), s2);
        let rows = top_abs_indices(&restricted_row_norms(a, &cols), s1);
        candidates.push((rows, cols));
    }

    let (best, value) = best_candidate(inst, &candidates)?;
    let (rows, cols) = candidates.swap_remove(best);
    let mut report = SolveReport::new("rowcol", value.report(), Selection::new(rows, cols));
    report.iterations = (m + n) as u64;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Both candidate subset pairs derived from a top singular pair. Only
/// absolute values enter the scans, so a joint sign flip of `(u1, v1)`
/// leaves the candidates unchanged.
fn spectral_candidates<T: Scalar>(
    a: &DenseMatrix<T>,
    u1: &[T],
    v1: &[T],
    s1: usize,
    s2: usize,
) -> [(Vec<usize>, Vec<usize>); 2] {
    let rows_u = top_abs_indices(u1, s1);
    let mut scores = vec![T::zero(); a.cols()];
    for &i in &rows_u {
        for (j, s) in scores.iter_mut().enumerate() {
            *s += u1[i] * a.get(i, j);
        }
    }
    let cols_u = top_abs_indices(&scores, s2);

    let cols_v = top_abs_indices(v1, s2);
    let mut scores = vec![T::zero(); a.rows()];
    for &j in &cols_v {
        for (i, s) in scores.iter_mut().enumerate() {
            *s += a.get(i, j) * v1[j];
        }
    }
    let rows_v = top_abs_indices(&scores, s1);
    [(rows_u, cols_u), (rows_v, cols_v)]
}

/// Selection by trimming the top singular pair: keep the rows under the
/// largest entries of `u1`, re-score columns through the trimmed vector,
/// and symmetrically from `v1`; return the better of the two solutions.
pub fn select_spectral<T: Scalar>(inst: &SsvdInstance<T>) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let top = truncated_svd(a, 1)?;
    let u1: Vec<T> = (0..a.rows()).map(|i| top.left_vectors.get(i, 0)).collect();
    let v1: Vec<T> = (0..a.cols()).map(|j| top.right_vectors.get(j, 0)).collect();
    let candidates = spectral_candidates(a, &u1, &v1, inst.s1(), inst.s2()).to_vec();
    let (best, value) = best_candidate(inst, &candidates)?;
    let (rows, cols) = candidates[best].clone();
    let mut report = SolveReport::new("spectral", value.report(), Selection::new(rows, cols));
    report.iterations = 2;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionVariant {
    Frobenius,
    RowCol,
    Spectral,
}

impl SelectionVariant {
    fn spca_name(self) -> &'static str {
        match self {
            SelectionVariant::Frobenius => "spca-frobenius",
            SelectionVariant::RowCol => "spca-rowcol",
            SelectionVariant::Spectral => "spca-spectral",
        }
    }
}

/// Principal-submatrix selection: run the rectangular heuristic with both
/// budgets equal to `s`, then keep the better of the two principal
/// submatrices indexed by its row and column sets.
///
/// The row/column variant runs a single column loop and the spectral
/// variant only the top-eigenvector branch; symmetry makes the transposed
/// scans redundant.
pub fn spca_select<T: Scalar>(
    inst: &SpcaInstance<T>,
    variant: SelectionVariant,
    solver: Option<&FrobeniusSolver>,
) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let n = a.rows();
    let s = inst.s();
    let k = inst.k();

    let (set1, set2, inner_nodes): (Vec<usize>, Vec<usize>, u64) = match variant {
        SelectionVariant::Frobenius => {
            let solver = solver.ok_or_else(|| {
                Error::Invalid("the frobenius variant needs an exact subproblem solver".into())
            })?;
            let outcome = solver.solve(a, s, s)?;
            (outcome.selection.rows().to_vec(), outcome.selection.cols().to_vec(), outcome.nodes)
        }
        SelectionVariant::RowCol => {
            let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(n);
            for j in 0..n {
                let rows = top_abs_indices(&a.column(j), s);
                let cols = top_abs_indices(&restricted_col_norms(a, &rows), s);
                candidates.push((rows, cols));
            }
            let ssvd = inst.as_ssvd();
            let (best, _) = best_candidate(&ssvd, &candidates)?;
            let (rows, cols) = candidates.swap_remove(best);
            (rows, cols, 0)
        }
        SelectionVariant::Spectral => {
            let top = truncated_svd(a, 1)?;
            let u1: Vec<T> = (0..n).map(|i| top.right_vectors.get(i, 0)).collect();
            let rows = top_abs_indices(&u1, s);
            let mut scores = vec![T::zero(); n];
            for &i in &rows {
                for (j, sc) in scores.iter_mut().enumerate() {
                    *sc += u1[i] * a.get(i, j);
                }
            }
            let cols = top_abs_indices(&scores, s);
            (rows, cols, 0)
        }
    };

    let v1 = ky_fan_clamped(&a.submatrix(&set1, &set1)?, k)?;
    let v2 = ky_fan_clamped(&a.submatrix(&set2, &set2)?, k)?;
    let (support, value) = if v2 > v1 { (set2, v2) } else { (set1, v1) };

    let mut report =
        SolveReport::new(variant.spca_name(), value.report(), Selection::principal(support));
    report.nodes = inner_nodes;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_abs_breaks_ties_to_smallest_index() {
        let v = [0.0, 2.0, -2.0, 1.0];
        assert_eq!(top_abs_indices(&v, 2), vec![1, 2]);
        assert_eq!(top_abs_indices(&v, 3), vec![1, 2, 3]);
        let zeros = [0.0; 4];
        assert_eq!(top_abs_indices(&zeros, 2), vec![0, 1]);
    }

    #[test]
    fn diagonal_budget_one_picks_largest_entry() {
        let a = DenseMatrix::new(3, 3, vec![1.0, 0.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0, 2.0])
            .unwrap();
        let inst = SsvdInstance::new(a, 1, 1, 1).unwrap();
        let solver = FrobeniusSolver::default();
        let r = select_frobenius(&inst, &solver).unwrap();
        assert_eq!(r.selection.rows(), &[1]);
        assert_eq!(r.selection.cols(), &[1]);
        assert!((r.objective - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rowcol_single_nonzero_entry_is_optimal() {
        let mut a = DenseMatrix::zeros(4, 5);
        a.set(2, 3, -7.0);
        let inst = SsvdInstance::new(a, 2, 2, 1).unwrap();
        let r = select_rowcol(&inst).unwrap();
        assert!((r.objective - 7.0).abs() < 1e-12);
        assert!(r.selection.rows().contains(&2));
        assert!(r.selection.cols().contains(&3));
        assert_eq!(r.iterations, 9);
    }

    #[test]
    fn spectral_recovers_sparse_rank_one_support() {
        // sigma * u v^T with supports inside the budgets.
        let m = 6;
        let n = 5;
        let u = [0.0, 0.6, 0.0, 0.8, 0.0, 0.0];
        let v = [0.0, 0.0, 1.0, 0.0, 0.0];
        let mut a = DenseMatrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                a.set(i, j, 3.0 * u[i] * v[j]);
            }
        }
        let inst = SsvdInstance::new(a, 2, 1, 1).unwrap();
        let r = select_spectral(&inst).unwrap();
        assert_eq!(r.selection.rows(), &[1, 3]);
        assert_eq!(r.selection.cols(), &[2]);
        assert!((r.objective - 3.0).abs() < 1e-10);
    }

    #[test]
    fn spectral_is_sign_invariant() {
        let mut state = 3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let a = DenseMatrix::new(5, 6, (0..30).map(|_| next()).collect()).unwrap();
        let top = truncated_svd(&a, 1).unwrap();
        let u1: Vec<f64> = (0..5).map(|i| top.left_vectors.get(i, 0)).collect();
        let v1: Vec<f64> = (0..6).map(|j| top.right_vectors.get(j, 0)).collect();
        let flipped_u: Vec<f64> = u1.iter().map(|x| -x).collect();
        let flipped_v: Vec<f64> = v1.iter().map(|x| -x).collect();
        assert_eq!(
            spectral_candidates(&a, &u1, &v1, 3, 3),
            spectral_candidates(&a, &flipped_u, &flipped_v, 3, 3)
        );
    }

    #[test]
    fn frobenius_node_cap_flags_report_non_optimal() {
        let mut state = 31u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let a = DenseMatrix::new(6, 6, (0..36).map(|_| next()).collect()).unwrap();
        let inst = SsvdInstance::new(a, 3, 3, 2).unwrap();
        let capped = crate::exact::FrobeniusSolver { node_cap: 2 };
        let r = select_frobenius(&inst, &capped).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn spca_frobenius_requires_solver() {
        let inst = SpcaInstance::new(DenseMatrix::<f64>::identity(4), 2, 1).unwrap();
        assert!(spca_select(&inst, SelectionVariant::Frobenius, None).is_err());
    }
}
