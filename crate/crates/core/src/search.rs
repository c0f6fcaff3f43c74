//! Greedy growth and swap-based local search.
//!
//! Greedy seeds at the largest absolute entry and alternates row/column
//! growth, scoring each candidate by the Ky Fan norm at the current rank.
//! Local search starts from the greedy output and accepts a swap only when
//! it beats the incumbent by a factor of `1 + delta`, which bounds the
//! number of accepted swaps independently of the input encoding.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::model::{Selection, SolveReport, SpcaInstance, SsvdInstance};
use crate::parallel::map_indexed;
use crate::scalar::Scalar;
use crate::selection::ky_fan_clamped;
use std::time::Instant;

/// Strict-improvement factor and sweep cap for local search.
///
/// The theoretical swap bound depends on the input encoding length, which
/// floating-point data does not expose; the sweep cap guarantees
/// termination regardless.
#[derive(Debug, Clone, Copy)]
pub struct LocalSearchConfig {
    pub delta: f64,
    pub max_sweeps: usize,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        Self { delta: 1e-6, max_sweeps: 1000 }
    }
}

fn insert_sorted(set: &mut Vec<usize>, v: usize) {
    let pos = set.partition_point(|&x| x < v);
    set.insert(pos, v);
}

fn complement(set: &[usize], max: usize) -> Vec<usize> {
    let mut mask = vec![false; max];
    for &i in set {
        mask[i] = true;
    }
    (0..max).filter(|&i| !mask[i]).collect()
}

/// Argmax over growth candidates: ties to the smallest candidate index.
fn grow_best<T: Scalar>(
    a: &DenseMatrix<T>,
    rows: &[usize],
    cols: &[usize],
    grow_rows: bool,
    rank: usize,
) -> Result<(usize, T)> {
    let pool = if grow_rows {
        complement(rows, a.rows())
    } else {
        complement(cols, a.cols())
    };
    debug_assert!(!pool.is_empty());
    let values = map_indexed(pool.len(), |c| {
        let i = pool[c];
        let (r, co): (Vec<usize>, Vec<usize>) = if grow_rows {
            let mut r = rows.to_vec();
            insert_sorted(&mut r, i);
            (r, cols.to_vec())
        } else {
            let mut co = cols.to_vec();
            insert_sorted(&mut co, i);
            (rows.to_vec(), co)
        };
        a.submatrix(&r, &co).and_then(|sub| ky_fan_clamped(&sub, rank))
    });
    let mut best = 0usize;
    let mut best_val: Option<T> = None;
    for (c, v) in values.into_iter().enumerate() {
        let v = v?;
        if best_val.is_none_or(|b| v > b) {
            best_val = Some(v);
            best = c;
        }
    }
    Ok((pool[best], best_val.expect("non-empty pool")))
}

/// Greedy growth, returning the report together with the per-iteration
/// objective trace.
pub fn greedy_ssvd_trace<T: Scalar>(inst: &SsvdInstance<T>) -> Result<(SolveReport, Vec<f64>)> {
    let start = Instant::now();
    let a = inst.matrix();
    let (s1, s2, k) = (inst.s1(), inst.s2(), inst.k());

    let (_, (i0, j0)) = a.max_abs_entry();
    let mut rows = vec![i0];
    let mut cols = vec![j0];
    let mut value = ky_fan_clamped(&a.submatrix(&rows, &cols)?, 1)?;
    let mut trace = vec![value.report()];

    for step in 2..=s1.max(s2) {
        let rank = step.min(k);
        if step <= s1.min(s2) {
            let (i, _) = grow_best(a, &rows, &cols, true, rank)?;
            insert_sorted(&mut rows, i);
            let (j, v) = grow_best(a, &rows, &cols, false, rank)?;
            insert_sorted(&mut cols, j);
            value = v;
        } else if s1 <= s2 {
            let (j, v) = grow_best(a, &rows, &cols, false, k)?;
            insert_sorted(&mut cols, j);
            value = v;
        } else {
            let (i, v) = grow_best(a, &rows, &cols, true, k)?;
            insert_sorted(&mut rows, i);
            value = v;
        }
        trace.push(value.report());
    }

    let mut report = SolveReport::new("greedy", value.report(), Selection::new(rows, cols));
    report.iterations = s1.max(s2) as u64;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok((report, trace))
}

pub fn greedy_ssvd<T: Scalar>(inst: &SsvdInstance<T>) -> Result<SolveReport> {
    Ok(greedy_ssvd_trace(inst)?.0)
}

/// Swap-based local search. `warm` defaults to the greedy output.
///
/// Row pairs are scanned in lexicographic order, then column pairs;
/// accepted swaps take effect immediately within the sweep. Hitting the
/// sweep cap clears the `converged` flag.
pub fn local_search_ssvd<T: Scalar>(
    inst: &SsvdInstance<T>,
    cfg: &LocalSearchConfig,
    warm: Option<&Selection>,
) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let k = inst.k();
    let (mut rows, mut cols) = match warm {
        Some(sel) => {
            sel.validate(a.rows(), a.cols(), inst.s1(), inst.s2())?;
            if sel.is_empty() {
                return Err(Error::Invalid("warm start selection must be non-empty".into()));
            }
            (sel.rows().to_vec(), sel.cols().to_vec())
        }
        None => {
            let greedy = greedy_ssvd(inst)?;
            (greedy.selection.rows().to_vec(), greedy.selection.cols().to_vec())
        }
    };
    let factor = T::one() + T::cast(cfg.delta);
    let mut value = ky_fan_clamped(&a.submatrix(&rows, &cols)?, k)?;
    let mut accepted = 0u64;
    let mut sweeps = 0u64;
    let mut converged = false;

    while (sweeps as usize) < cfg.max_sweeps {
        sweeps += 1;
        let mut improved = false;

        for i1 in rows.clone() {
            for j1 in complement(&rows, a.rows()) {
                let mut cand = rows.clone();
                cand.retain(|&x| x != i1);
                insert_sorted(&mut cand, j1);
                let v = ky_fan_clamped(&a.submatrix(&cand, &cols)?, k)?;
                if v > factor * value {
                    rows = cand;
                    value = v;
                    accepted += 1;
                    improved = true;
                    break;
                }
            }
        }

        for i2 in cols.clone() {
            for j2 in complement(&cols, a.cols()) {
                let mut cand = cols.clone();
                cand.retain(|&x| x != i2);
                insert_sorted(&mut cand, j2);
                let v = ky_fan_clamped(&a.submatrix(&rows, &cand)?, k)?;
                if v > factor * value {
                    cols = cand;
                    value = v;
                    accepted += 1;
                    improved = true;
                    break;
                }
            }
        }

        if !improved {
            converged = true;
            break;
        }
    }

    let mut report = SolveReport::new("local-search", value.report(), Selection::new(rows, cols));
    report.iterations = accepted;
    report.nodes = sweeps;
    report.converged = converged;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Greedy growth for the principal-submatrix problem, with its objective
/// trace. Starts from the empty set; the first `k` additions are the `k`
/// largest diagonal entries.
pub fn greedy_spca_trace<T: Scalar>(inst: &SpcaInstance<T>) -> Result<(SolveReport, Vec<f64>)> {
    let start = Instant::now();
    let a = inst.matrix();
    let (s, k) = (inst.s(), inst.k());
    let mut support: Vec<usize> = Vec::with_capacity(s);
    let mut value = T::zero();
    let mut trace = Vec::with_capacity(s);

    for step in 1..=s {
        let rank = step.min(k);
        let pool = complement(&support, a.rows());
        let values = map_indexed(pool.len(), |c| {
            let mut cand = support.clone();
            insert_sorted(&mut cand, pool[c]);
            a.submatrix(&cand, &cand).and_then(|sub| ky_fan_clamped(&sub, rank))
        });
        let mut best = 0usize;
        let mut best_val: Option<T> = None;
        for (c, v) in values.into_iter().enumerate() {
            let v = v?;
            if best_val.is_none_or(|b| v > b) {
                best_val = Some(v);
                best = c;
            }
        }
        insert_sorted(&mut support, pool[best]);
        value = best_val.expect("non-empty pool");
        trace.push(value.report());
    }

    let mut report = SolveReport::new("spca-greedy", value.report(), Selection::principal(support));
    report.iterations = s as u64;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok((report, trace))
}

pub fn greedy_spca<T: Scalar>(inst: &SpcaInstance<T>) -> Result<SolveReport> {
    Ok(greedy_spca_trace(inst)?.0)
}

/// Single-subset local search for the principal-submatrix problem.
pub fn local_search_spca<T: Scalar>(
    inst: &SpcaInstance<T>,
    cfg: &LocalSearchConfig,
    warm: Option<&[usize]>,
) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let k = inst.k();
    let mut support: Vec<usize> = match warm {
        Some(idx) => {
            let sel = Selection::principal(idx.to_vec());
            sel.validate(a.rows(), a.cols(), inst.s(), inst.s())?;
            if sel.is_empty() {
                return Err(Error::Invalid("warm start support must be non-empty".into()));
            }
            sel.rows().to_vec()
        }
        None => greedy_spca(inst)?.selection.rows().to_vec(),
    };
    let factor = T::one() + T::cast(cfg.delta);
    let mut value = ky_fan_clamped(&a.submatrix(&support, &support)?, k)?;
    let mut accepted = 0u64;
    let mut sweeps = 0u64;
    let mut converged = false;

    while (sweeps as usize) < cfg.max_sweeps {
        sweeps += 1;
        let mut improved = false;
        for i in support.clone() {
            for j in complement(&support, a.rows()) {
                let mut cand = support.clone();
                cand.retain(|&x| x != i);
                insert_sorted(&mut cand, j);
                let v = ky_fan_clamped(&a.submatrix(&cand, &cand)?, k)?;
                if v > factor * value {
                    support = cand;
                    value = v;
                    accepted += 1;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            converged = true;
            break;
        }
    }

    let mut report =
        SolveReport::new("spca-local-search", value.report(), Selection::principal(support));
    report.iterations = accepted;
    report.nodes = sweeps;
    report.converged = converged;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_full_budgets_recover_whole_matrix() {
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let a = DenseMatrix::new(4, 3, (0..12).map(|_| next()).collect()).unwrap();
        let inst = SsvdInstance::new(a.clone(), 4, 3, 2).unwrap();
        let r = greedy_ssvd(&inst).unwrap();
        assert_eq!(r.selection.rows(), &[0, 1, 2, 3]);
        assert_eq!(r.selection.cols(), &[0, 1, 2]);
        let full = crate::linalg::ky_fan_norm(&a, 2).unwrap();
        assert!((r.objective - full).abs() < 1e-10);
    }

    #[test]
    fn greedy_trace_is_nondecreasing() {
        let mut state = 5u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let a = DenseMatrix::new(6, 7, (0..42).map(|_| next()).collect()).unwrap();
        let inst = SsvdInstance::new(a, 3, 4, 2).unwrap();
        let (_, trace) = greedy_ssvd_trace(&inst).unwrap();
        assert_eq!(trace.len(), 4);
        for w in trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn local_search_fixed_point_returns_warm_start() {
        // Identity with budgets 2: any two diagonal entries are optimal, so
        // one sweep accepts nothing.
        let inst = SsvdInstance::new(DenseMatrix::<f64>::identity(4), 2, 2, 2).unwrap();
        let warm = Selection::new(vec![0, 1], vec![0, 1]);
        let r = local_search_ssvd(&inst, &LocalSearchConfig::default(), Some(&warm)).unwrap();
        assert_eq!(r.selection, warm);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.nodes, 1);
        assert!(r.converged);
    }

    #[test]
    fn sweep_cap_clears_the_converged_flag() {
        let inst = SsvdInstance::new(DenseMatrix::<f64>::identity(4), 2, 2, 2).unwrap();
        let warm = Selection::new(vec![0, 1], vec![0, 1]);
        let cfg = LocalSearchConfig { delta: 1e-6, max_sweeps: 0 };
        let r = local_search_ssvd(&inst, &cfg, Some(&warm)).unwrap();
        assert!(!r.converged);
        assert_eq!(r.selection, warm);
    }

    #[test]
    fn greedy_all_zero_matrix_picks_leading_indices() {
        let a = DenseMatrix::<f64>::zeros(3, 4);
        let inst = SsvdInstance::new(a, 2, 2, 1).unwrap();
        let r = greedy_ssvd(&inst).unwrap();
        assert_eq!(r.selection.rows(), &[0, 1]);
        assert_eq!(r.selection.cols(), &[0, 1]);
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn spca_greedy_full_budget_takes_everything() {
        let inst = SpcaInstance::new(DenseMatrix::<f64>::identity(4), 4, 2).unwrap();
        let r = greedy_spca(&inst).unwrap();
        assert_eq!(r.selection.rows(), &[0, 1, 2, 3]);
        assert!((r.objective - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spca_greedy_first_k_steps_take_largest_diagonals() {
        let mut a = DenseMatrix::<f64>::zeros(5, 5);
        for (i, d) in [1.0, 5.0, 2.0, 5.0, 3.0].into_iter().enumerate() {
            a.set(i, i, d);
        }
        let inst = SpcaInstance::new(a, 3, 2).unwrap();
        let (_, trace) = greedy_spca_trace(&inst).unwrap();
        // Largest diagonal first, tie at 5.0 broken to index 1.
        assert!((trace[0] - 5.0).abs() < 1e-12);
        assert!((trace[1] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn spca_local_search_fixed_point() {
        let inst = SpcaInstance::new(DenseMatrix::<f64>::identity(5), 2, 2).unwrap();
        let warm = [0usize, 1];
        let r = local_search_spca(&inst, &LocalSearchConfig::default(), Some(&warm)).unwrap();
        assert_eq!(r.selection.rows(), &[0, 1]);
        assert_eq!(r.iterations, 0);
        assert!(r.converged);
    }
}
