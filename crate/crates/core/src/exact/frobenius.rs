//! Exact maximizer of the squared mass `sum_{i in S1, j in S2} a_ij^2`.
//!
//! Branch-and-bound over row inclusion: at a node with a fixed row prefix,
//! the bound takes the top-`s2` column sums of squared entries over the
//! fixed rows plus every still-available row. Adding rows never decreases
//! a column sum, so the bound dominates every completion. Rows are
//! branched include-first in index order and improvements must be strict,
//! so the returned selection is the lexicographically smallest maximizer.

use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::model::Selection;
use crate::scalar::Scalar;

/// Joint row/column subset solver for the squared-mass subproblem.
#[derive(Debug, Clone, Copy)]
pub struct FrobeniusSolver {
    /// Give up (flagging the result non-optimal) after this many search
    /// nodes.
    pub node_cap: u64,
}

impl Default for FrobeniusSolver {
    fn default() -> Self {
        Self { node_cap: 50_000_000 }
    }
}

#[derive(Debug, Clone)]
pub struct FrobeniusOutcome<T> {
    pub selection: Selection,
    /// Total squared mass of the selected block.
    pub squared_mass: T,
    /// False when the node cap stopped the search early.
    pub optimal: bool,
    pub nodes: u64,
}

struct Search<'a, T> {
    sq: &'a [Vec<T>],
    /// suffix[r][j] = sum of squared column-j entries over rows r..m.
    suffix: Vec<Vec<T>>,
    s1: usize,
    s2: usize,
    m: usize,
    node_cap: u64,
    nodes: u64,
    truncated: bool,
    best_mass: Option<T>,
    best_rows: Vec<usize>,
    best_cols: Vec<usize>,
}

impl<T: Scalar> Search<'_, T> {
    /// Top-`s2` column sums (ties to the smallest column index).
    fn top_columns(&self, colsum: &[T]) -> (T, Vec<usize>) {
        let mut idx: Vec<usize> = (0..colsum.len()).collect();
        idx.sort_by(|&a, &b| {
            colsum[b]
                .partial_cmp(&colsum[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let mut cols = idx[..self.s2].to_vec();
        cols.sort_unstable();
        let mass = cols.iter().map(|&j| colsum[j]).sum();
        (mass, cols)
    }

    fn dfs(&mut self, r: usize, chosen: &mut Vec<usize>, colsum: &mut Vec<T>) {
        if self.truncated {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_cap {
            self.truncated = true;
            return;
        }

        if chosen.len() == self.s1 || r == self.m {
            let (mass, cols) = self.top_columns(colsum);
            if self.best_mass.is_none_or(|b| mass > b) {
                self.best_mass = Some(mass);
                self.best_rows = chosen.clone();
                self.best_cols = cols;
            }
            return;
        }

        let optimistic: Vec<T> = colsum
            .iter()
            .zip(&self.suffix[r])
            .map(|(&c, &s)| c + s)
            .collect();
        let (bound, _) = self.top_columns(&optimistic);
        if let Some(best) = self.best_mass {
            if bound <= best {
                return;
            }
        }

        chosen.push(r);
        for (j, c) in colsum.iter_mut().enumerate() {
            *c += self.sq[r][j];
        }
        self.dfs(r + 1, chosen, colsum);
        chosen.pop();
        for (j, c) in colsum.iter_mut().enumerate() {
            *c -= self.sq[r][j];
        }

        self.dfs(r + 1, chosen, colsum);
    }
}

impl FrobeniusSolver {
    pub fn solve<T: Scalar>(
        &self,
        a: &DenseMatrix<T>,
        s1: usize,
        s2: usize,
    ) -> Result<FrobeniusOutcome<T>> {
        let (m, n) = (a.rows(), a.cols());
        if s1 == 0 || s1 > m || s2 == 0 || s2 > n {
            return Err(crate::error::Error::Invalid(format!(
                "budgets {s1}x{s2} out of range for a {m}x{n} matrix"
            )));
        }
        let sq: Vec<Vec<T>> = (0..m)
            .map(|i| a.row(i).iter().map(|&v| v * v).collect())
            .collect();
        let mut suffix = vec![vec![T::zero(); n]; m + 1];
        for r in (0..m).rev() {
            for j in 0..n {
                suffix[r][j] = suffix[r + 1][j] + sq[r][j];
            }
        }
        let mut search = Search {
            sq: &sq,
            suffix,
            s1,
            s2,
            m,
            node_cap: self.node_cap,
            nodes: 0,
            truncated: false,
            best_mass: None,
            best_rows: Vec::new(),
            best_cols: Vec::new(),
        };
        // Seed with the first lexicographic leaf so a node cap can never
        // leave the search without a feasible selection.
        {
            let seed_rows: Vec<usize> = (0..s1).collect();
            let mut colsum = vec![T::zero(); n];
            for &i in &seed_rows {
                for (j, c) in colsum.iter_mut().enumerate() {
                    *c += sq[i][j];
                }
            }
            let (mass, cols) = search.top_columns(&colsum);
            search.best_mass = Some(mass);
            search.best_rows = seed_rows;
            search.best_cols = cols;
        }
        search.dfs(0, &mut Vec::new(), &mut vec![T::zero(); n]);
        Ok(FrobeniusOutcome {
            selection: Selection::new(search.best_rows, search.best_cols),
            squared_mass: search.best_mass.unwrap_or_else(T::zero),
            optimal: !search.truncated,
            nodes: search.nodes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_nonzero_entry() {
        let mut a = DenseMatrix::<f64>::zeros(3, 4);
        a.set(1, 2, -3.0);
        let out = FrobeniusSolver::default().solve(&a, 1, 1).unwrap();
        assert_eq!(out.selection.rows(), &[1]);
        assert_eq!(out.selection.cols(), &[2]);
        assert!((out.squared_mass - 9.0).abs() < 1e-12);
        assert!(out.optimal);
    }

    #[test]
    fn returns_exactly_sized_selection_on_zero_matrix() {
        let a = DenseMatrix::<f64>::zeros(4, 5);
        let out = FrobeniusSolver::default().solve(&a, 2, 3).unwrap();
        assert_eq!(out.selection.rows(), &[0, 1]);
        assert_eq!(out.selection.cols(), &[0, 1, 2]);
        assert_eq!(out.squared_mass, 0.0);
    }

    #[test]
    fn node_cap_flags_non_optimal() {
        let a = DenseMatrix::new(4, 4, (0..16).map(|v| v as f64).collect()).unwrap();
        let out = FrobeniusSolver { node_cap: 2 }.solve(&a, 2, 2).unwrap();
        assert!(!out.optimal);
    }
}
