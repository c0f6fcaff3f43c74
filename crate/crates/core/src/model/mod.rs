//! Problem instances, selections, solve reports, validation and file I/O.

pub mod io;

use crate::error::{Error, Result};
use crate::linalg::{ky_fan_norm, psd_check, DenseMatrix};
use crate::scalar::Scalar;
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// PSD tolerance applied when validating covariance inputs.
pub const SPCA_PSD_TOL: f64 = 1e-8;

/// A matrix together with row/column budgets and the target rank.
#[derive(Debug, Clone)]
pub struct SsvdInstance<T> {
    matrix: DenseMatrix<T>,
    s1: usize,
    s2: usize,
    k: usize,
}

impl<T: Scalar> SsvdInstance<T> {
    pub fn new(matrix: DenseMatrix<T>, s1: usize, s2: usize, k: usize) -> Result<Self> {
        let (m, n) = (matrix.rows(), matrix.cols());
        if s1 == 0 || s1 > m {
            return Err(Error::Invalid(format!("row budget s1={s1} out of range 1..={m}")));
        }
        if s2 == 0 || s2 > n {
            return Err(Error::Invalid(format!("column budget s2={s2} out of range 1..={n}")));
        }
        if k == 0 || k > s1.min(s2) {
            return Err(Error::Invalid(format!(
                "rank k={k} out of range 1..={} (min of the budgets)",
                s1.min(s2)
            )));
        }
        Ok(Self { matrix, s1, s2, k })
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }

    pub fn s1(&self) -> usize {
        self.s1
    }

    pub fn s2(&self) -> usize {
        self.s2
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// A square PSD matrix with a single support budget and target rank.
#[derive(Debug, Clone)]
pub struct SpcaInstance<T> {
    matrix: DenseMatrix<T>,
    s: usize,
    k: usize,
}

impl<T: Scalar> SpcaInstance<T> {
    pub fn new(matrix: DenseMatrix<T>, s: usize, k: usize) -> Result<Self> {
        let n = matrix.rows();
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "spca matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !psd_check(&matrix, T::cast(SPCA_PSD_TOL))? {
            return Err(Error::Invalid(
                "spca matrix must be positive semidefinite within tolerance".into(),
            ));
        }
        if s == 0 || s > n {
            return Err(Error::Invalid(format!("budget s={s} out of range 1..={n}")));
        }
        if k == 0 || k > s {
            return Err(Error::Invalid(format!("rank k={k} out of range 1..={s}")));
        }
        Ok(Self { matrix, s, k })
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.matrix
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The equivalent rectangular instance with both budgets equal to `s`.
    pub fn as_ssvd(&self) -> SsvdInstance<T> {
        SsvdInstance {
            matrix: self.matrix.clone(),
            s1: self.s,
            s2: self.s,
            k: self.k,
        }
    }
}

/// A pair of sorted, duplicate-free index subsets. Indices are 0-based in
/// memory and 1-based on the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Selection {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Self { rows, cols }
    }

    /// Principal selection with identical row and column sets.
    pub fn principal(idx: Vec<usize>) -> Self {
        let s = {
            let mut s = idx;
            s.sort_unstable();
            s.dedup();
            s
        };
        Self { rows: s.clone(), cols: s }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() || self.cols.is_empty()
    }

    /// Index-range and budget validation against an instance shape.
    pub fn validate(&self, m: usize, n: usize, s1: usize, s2: usize) -> Result<()> {
        if let Some(&i) = self.rows.iter().find(|&&i| i >= m) {
            return Err(Error::Dimension(format!("row index {i} out of range for {m} rows")));
        }
        if let Some(&j) = self.cols.iter().find(|&&j| j >= n) {
            return Err(Error::Dimension(format!("column index {j} out of range for {n} columns")));
        }
        if self.rows.len() > s1 || self.cols.len() > s2 {
            return Err(Error::Invalid(format!(
                "selection of {}x{} indices exceeds budgets {s1}x{s2}",
                self.rows.len(),
                self.cols.len()
            )));
        }
        Ok(())
    }
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|&i| i + 1).collect()
}

impl Serialize for Selection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Selection", 2)?;
        st.serialize_field("rows", &one_based(&self.rows))?;
        st.serialize_field("cols", &one_based(&self.cols))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Selection {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            rows: Vec<usize>,
            cols: Vec<usize>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let back = |v: Vec<usize>| -> std::result::Result<Vec<usize>, D::Error> {
            v.into_iter()
                .map(|i| {
                    i.checked_sub(1)
                        .ok_or_else(|| serde::de::Error::custom("serialized indices are 1-based"))
                })
                .collect()
        };
        Ok(Selection::new(back(wire.rows)?, back(wire.cols)?))
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub objective: f64,
    pub selection: Selection,
    pub upper_bound: Option<f64>,
    pub gap_percent: Option<f64>,
    pub nodes: u64,
    pub cuts: u64,
    pub iterations: u64,
    pub wall_seconds: f64,
    /// False when a sweep cap, node cap or time limit stopped the solve
    /// before local or global optimality was established.
    pub converged: bool,
}

impl SolveReport {
    pub fn new(algorithm: &str, objective: f64, selection: Selection) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            objective,
            selection,
            upper_bound: None,
            gap_percent: None,
            nodes: 0,
            cuts: 0,
            iterations: 0,
            wall_seconds: 0.0,
            converged: true,
        }
    }
}

/// Optimality gap in percent: `100 (ub - objective) / objective`.
pub fn gap_percent(objective: f64, upper_bound: f64) -> Option<f64> {
    if objective > 0.0 {
        Some(100.0 * (upper_bound - objective) / objective)
    } else if upper_bound.abs() <= 1e-12 {
        Some(0.0)
    } else {
        None
    }
}

/// Ky Fan value of the selected submatrix, with the rank clamped to the
/// selection size; empty selections evaluate to zero.
pub fn objective<T: Scalar>(inst: &SsvdInstance<T>, sel: &Selection) -> Result<T> {
    sel.validate(inst.matrix.rows(), inst.matrix.cols(), inst.s1, inst.s2)?;
    if sel.is_empty() {
        return Ok(T::zero());
    }
    let sub = inst.matrix.submatrix(sel.rows(), sel.cols())?;
    let k_eff = inst.k.min(sel.rows().len()).min(sel.cols().len());
    ky_fan_norm(&sub, k_eff)
}

/// Principal-submatrix objective for SPCA selections.
pub fn spca_objective<T: Scalar>(inst: &SpcaInstance<T>, idx: &[usize]) -> Result<T> {
    if idx.is_empty() {
        return Ok(T::zero());
    }
    let sub = inst.matrix.submatrix(idx, idx)?;
    let k_eff = inst.k.min(idx.len());
    ky_fan_norm(&sub, k_eff)
}
