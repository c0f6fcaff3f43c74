//! Scan an ordered sequence of equally sized matrices, reporting the
//! selected-submatrix objective per frame next to the full-matrix nuclear
//! norm baseline.

use crate::commands::{load_input, run_solve_on_matrix, Algo};
use ssvd_core::error::{Error, Result};
use ssvd_core::linalg::ky_fan_norm;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub frame: usize,
    pub file: String,
    pub objective: f64,
    pub nuclear_norm: f64,
}

pub fn run_scan(
    inputs: &[PathBuf],
    s1: usize,
    s2: usize,
    k: usize,
    algo: Algo,
    delta: f64,
) -> Result<Vec<ScanRow>> {
    if inputs.is_empty() {
        return Err(Error::Invalid("scan needs at least one input frame".into()));
    }
    let mut rows = Vec::with_capacity(inputs.len());
    let mut dims: Option<(usize, usize)> = None;
    for (frame, path) in inputs.iter().enumerate() {
        let matrix = load_input(path)?;
        let shape = (matrix.rows(), matrix.cols());
        match dims {
            None => dims = Some(shape),
            Some(d) if d != shape => {
                return Err(Error::Dimension(format!(
                    "frame {} ({}) is {}x{}, expected {}x{}",
                    frame,
                    path.display(),
                    shape.0,
                    shape.1,
                    d.0,
                    d.1
                )));
            }
            _ => {}
        }
        let nuclear = ky_fan_norm(&matrix, shape.0.min(shape.1))?;
        let report = run_solve_on_matrix(matrix, s1, s2, k, algo, delta)?;
        rows.push(ScanRow {
            frame,
            file: path.display().to_string(),
            objective: report.objective,
            nuclear_norm: nuclear,
        });
    }
    Ok(rows)
}

pub const SCAN_CSV_HEADER: &str = "frame,file,objective,nuclear_norm";

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.frame, r.file, r.objective, r.nuclear_norm);
    }
    out
}
