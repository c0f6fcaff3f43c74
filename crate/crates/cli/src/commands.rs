//! Dispatch from CLI options onto the library solvers.

use ssvd_core::error::{Error, Result};
use ssvd_core::exact::{
    brute_force_spca, brute_force_ssvd, spca_branch_and_cut, ssvd_branch_and_cut, BncConfig,
    FrobeniusSolver,
};
use ssvd_core::model::io::{load_matrix, MatrixFormat};
use ssvd_core::model::SolveReport;
use ssvd_core::search::{
    greedy_spca, greedy_ssvd, local_search_spca, local_search_ssvd, LocalSearchConfig,
};
use ssvd_core::selection::{select_frobenius, select_rowcol, select_spectral, spca_select, SelectionVariant};
use ssvd_core::{Matrix, Spca, Ssvd};
use std::path::{Path, PathBuf};
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Frobenius,
    RowCol,
    Spectral,
    Greedy,
    LocalSearch,
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frobenius" => Ok(Self::Frobenius),
            "rowcol" => Ok(Self::RowCol),
            "spectral" => Ok(Self::Spectral),
            "greedy" => Ok(Self::Greedy),
            "local-search" => Ok(Self::LocalSearch),
            other => Err(Error::Invalid(format!(
                "unknown algorithm {other:?}; expected frobenius, rowcol, spectral, greedy or local-search"
            ))),
        }
    }
}

pub fn load_input(path: &Path) -> Result<Matrix> {
    load_matrix(path, MatrixFormat::from_path(path)?)
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub input: PathBuf,
    pub s1: usize,
    pub s2: usize,
    pub k: usize,
    pub algo: Algo,
    pub spca: bool,
    pub delta: f64,
    pub max_sweeps: usize,
    pub oracle: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub report: SolveReport,
    pub oracle: Option<f64>,
}

/// Run one approximation algorithm on a matrix file.
pub fn run_solve(opts: &SolveOptions) -> Result<SolveOutput> {
    let a = load_input(&opts.input)?;
    let cfg = LocalSearchConfig { delta: opts.delta, max_sweeps: opts.max_sweeps };
    if opts.spca {
        if opts.s1 != opts.s2 {
            return Err(Error::Invalid(format!(
                "--spca requires s1 == s2, got {} and {}",
                opts.s1, opts.s2
            )));
        }
        let inst = Spca::new(a, opts.s1, opts.k)?;
        let report = match opts.algo {
            Algo::Frobenius => {
                spca_select(&inst, SelectionVariant::Frobenius, Some(&FrobeniusSolver::default()))?
            }
            Algo::RowCol => spca_select(&inst, SelectionVariant::RowCol, None)?,
            Algo::Spectral => spca_select(&inst, SelectionVariant::Spectral, None)?,
            Algo::Greedy => greedy_spca(&inst)?,
            Algo::LocalSearch => local_search_spca(&inst, &cfg, None)?,
        };
        let oracle = if opts.oracle { Some(brute_force_spca(&inst)?.objective) } else { None };
        Ok(SolveOutput { report, oracle })
    } else {
        let inst = Ssvd::new(a, opts.s1, opts.s2, opts.k)?;
        let report = match opts.algo {
            Algo::Frobenius => select_frobenius(&inst, &FrobeniusSolver::default())?,
            Algo::RowCol => select_rowcol(&inst)?,
            Algo::Spectral => select_spectral(&inst)?,
            Algo::Greedy => greedy_ssvd(&inst)?,
            Algo::LocalSearch => local_search_ssvd(&inst, &cfg, None)?,
        };
        let oracle = if opts.oracle { Some(brute_force_ssvd(&inst)?.objective) } else { None };
        Ok(SolveOutput { report, oracle })
    }
}

/// Run one rectangular algorithm on an in-memory matrix.
pub fn run_solve_on_matrix(
    matrix: Matrix,
    s1: usize,
    s2: usize,
    k: usize,
    algo: Algo,
    delta: f64,
) -> Result<SolveReport> {
    let inst = Ssvd::new(matrix, s1, s2, k)?;
    match algo {
        Algo::Frobenius => select_frobenius(&inst, &FrobeniusSolver::default()),
        Algo::RowCol => select_rowcol(&inst),
        Algo::Spectral => select_spectral(&inst),
        Algo::Greedy => greedy_ssvd(&inst),
        Algo::LocalSearch => {
            local_search_ssvd(&inst, &LocalSearchConfig { delta, max_sweeps: 1000 }, None)
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExactOptions {
    pub input: PathBuf,
    pub s1: usize,
    pub s2: usize,
    pub k: usize,
    pub spca: bool,
    pub brute: bool,
    pub time_limit: Option<f64>,
    pub node_cap: Option<u64>,
}

/// Run an exact solver (branch-and-cut, or brute force with `--brute`).
pub fn run_exact(opts: &ExactOptions) -> Result<SolveReport> {
    let a = load_input(&opts.input)?;
    let cfg = BncConfig {
        time_limit: opts.time_limit.map(Duration::from_secs_f64),
        node_cap: opts.node_cap,
    };
    if opts.spca {
        if opts.s1 != opts.s2 {
            return Err(Error::Invalid(format!(
                "--spca requires s1 == s2, got {} and {}",
                opts.s1, opts.s2
            )));
        }
        let inst = Spca::new(a, opts.s1, opts.k)?;
        if opts.brute {
            brute_force_spca(&inst)
        } else {
            spca_branch_and_cut(&inst, &cfg)
        }
    } else {
        let inst = Ssvd::new(a, opts.s1, opts.s2, opts.k)?;
        if opts.brute {
            brute_force_ssvd(&inst)
        } else {
            ssvd_branch_and_cut(&inst, &cfg)
        }
    }
}

/// One-line human summary of a report.
pub fn summary(report: &SolveReport) -> String {
    let rows: Vec<String> = report.selection.rows().iter().map(|i| (i + 1).to_string()).collect();
    let cols: Vec<String> = report.selection.cols().iter().map(|j| (j + 1).to_string()).collect();
    let mut out = format!(
        "{}: objective {:.9} rows [{}] cols [{}]",
        report.algorithm,
        report.objective,
        rows.join(" "),
        cols.join(" ")
    );
    if let Some(ub) = report.upper_bound {
        out.push_str(&format!(" bound {ub:.9}"));
    }
    if let Some(gap) = report.gap_percent {
        out.push_str(&format!(" gap {gap:.4}%"));
    }
    if report.nodes > 0 || report.cuts > 0 {
        out.push_str(&format!(" nodes {} cuts {}", report.nodes, report.cuts));
    }
    if !report.converged {
        out.push_str(" [not proven optimal]");
    }
    out.push_str(&format!(" ({:.3}s)", report.wall_seconds));
    out
}
