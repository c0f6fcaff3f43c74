//! Exhaustive enumeration oracles.
//!
//! Only subsets of exactly the budget sizes are enumerated: the Ky Fan
//! norm never decreases when a row or column is added, so the optimum over
//! "at most" budgets is attained at the full sizes.

use crate::error::{Error, Result};
use crate::linalg::ky_fan_norm;
use crate::model::{Selection, SolveReport, SpcaInstance, SsvdInstance};
use crate::scalar::Scalar;
use std::time::Instant;

/// Default cap on the number of enumerated subset pairs.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// Lexicographic fixed-size subset iterator.
pub(crate) struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, current: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) {
                self.current[i] += 1;
                for j in (i + 1)..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn brute_force_ssvd<T: Scalar>(inst: &SsvdInstance<T>) -> Result<SolveReport> {
    brute_force_ssvd_capped(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_ssvd_capped<T: Scalar>(inst: &SsvdInstance<T>, cap: u128) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let (m, n) = (a.rows(), a.cols());
    let (s1, s2, k) = (inst.s1(), inst.s2(), inst.k());
    let total = binomial(m, s1) * binomial(n, s2);
    if total > cap {
        return Err(Error::EnumerationCap { needed: total, cap });
    }

    let mut best: Option<(T, Vec<usize>, Vec<usize>)> = None;
    let mut evaluated = 0u64;
    for rows in Combinations::new(m, s1) {
        for cols in Combinations::new(n, s2) {
            let value = ky_fan_norm(&a.submatrix(&rows, &cols)?, k)?;
            evaluated += 1;
            if best.as_ref().is_none_or(|(b, _, _)| value > *b) {
                best = Some((value, rows.clone(), cols));
            }
        }
    }
    let (value, rows, cols) = best.expect("budgets are at least one");
    let mut report = SolveReport::new("brute-force", value.report(), Selection::new(rows, cols));
    report.upper_bound = Some(report.objective);
    report.gap_percent = Some(0.0);
    report.iterations = evaluated;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn brute_force_spca<T: Scalar>(inst: &SpcaInstance<T>) -> Result<SolveReport> {
    brute_force_spca_capped(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_spca_capped<T: Scalar>(inst: &SpcaInstance<T>, cap: u128) -> Result<SolveReport> {
    let start = Instant::now();
    let a = inst.matrix();
    let n = a.rows();
    let (s, k) = (inst.s(), inst.k());
    let total = binomial(n, s);
    if total > cap {
        return Err(Error::EnumerationCap { needed: total, cap });
    }

    let mut best: Option<(T, Vec<usize>)> = None;
    let mut evaluated = 0u64;
    for idx in Combinations::new(n, s) {
        let value = ky_fan_norm(&a.submatrix(&idx, &idx)?, k)?;
        evaluated += 1;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, idx));
        }
    }
    let (value, idx) = best.expect("budget is at least one");
    let mut report =
        SolveReport::new("brute-force-spca", value.report(), Selection::principal(idx));
    report.upper_bound = Some(report.objective);
    report.gap_percent = Some(0.0);
    report.iterations = evaluated;
    report.wall_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let all: Vec<Vec<usize>> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(binomial(5, 3), 10);
    }

    #[test]
    fn identity_budget_two() {
        let inst = SsvdInstance::new(DenseMatrix::<f64>::identity(4), 2, 2, 2).unwrap();
        let r = brute_force_ssvd(&inst).unwrap();
        assert!((r.objective - 2.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_spca_takes_largest_diagonals() {
        let mut a = DenseMatrix::<f64>::zeros(5, 5);
        for (i, d) in [4.0, 1.0, 3.0, 5.0, 2.0].into_iter().enumerate() {
            a.set(i, i, d);
        }
        let inst = SpcaInstance::new(a, 3, 2).unwrap();
        let r = brute_force_spca(&inst).unwrap();
        assert!((r.objective - 9.0).abs() < 1e-12);
    }

    #[test]
    fn cap_exceeded_errors() {
        let inst = SsvdInstance::new(DenseMatrix::<f64>::identity(6), 3, 3, 2).unwrap();
        assert!(matches!(
            brute_force_ssvd_capped(&inst, 10),
            Err(Error::EnumerationCap { .. })
        ));
    }
}
