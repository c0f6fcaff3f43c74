//! Benchmark sweeps: run a set of algorithms over an (s1, s2, k) grid and
//! emit one long-format CSV row per point, with ratios against the full
//! matrix and, when available, against an oracle optimum.

use crate::commands::load_input;
use crate::gen::{gaussian, Sidecar};
use ssvd_core::error::{Error, Result};
use ssvd_core::exact::{brute_force_ssvd, ssvd_branch_and_cut, BncConfig, FrobeniusSolver};
use ssvd_core::linalg::ky_fan_norm;
use ssvd_core::model::SolveReport;
use ssvd_core::search::{greedy_ssvd, local_search_ssvd, LocalSearchConfig};
use ssvd_core::selection::{select_frobenius, select_rowcol, select_spectral};
use ssvd_core::{Matrix, Ssvd};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAlgo {
    Frobenius,
    RowCol,
    Spectral,
    Greedy,
    LocalSearch,
    Exact,
    Brute,
}

impl BenchAlgo {
    pub fn name(self) -> &'static str {
        match self {
            Self::Frobenius => "frobenius",
            Self::RowCol => "rowcol",
            Self::Spectral => "spectral",
            Self::Greedy => "greedy",
            Self::LocalSearch => "local-search",
            Self::Exact => "exact",
            Self::Brute => "brute",
        }
    }
}

impl std::str::FromStr for BenchAlgo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frobenius" => Ok(Self::Frobenius),
            "rowcol" => Ok(Self::RowCol),
            "spectral" => Ok(Self::Spectral),
            "greedy" => Ok(Self::Greedy),
            "local-search" => Ok(Self::LocalSearch),
            "exact" => Ok(Self::Exact),
            "brute" => Ok(Self::Brute),
            other => Err(Error::Invalid(format!("unknown bench algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum BenchSource {
    File(PathBuf),
    Gaussian { m: usize, n: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub source: BenchSource,
    pub algorithms: Vec<BenchAlgo>,
    pub s1_grid: Vec<usize>,
    pub s2_grid: Vec<usize>,
    pub k_grid: Vec<usize>,
    pub reps: usize,
    pub oracle: bool,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: String,
    pub s1: usize,
    pub s2: usize,
    pub k: usize,
    pub rep: usize,
    pub objective: f64,
    pub ratio_full: Option<f64>,
    pub ratio_oracle: Option<f64>,
    pub wall_seconds: f64,
}

/// Parse "lo:hi", "a,b,c" or a single value into a grid.
pub fn parse_grid(spec: &str) -> Result<Vec<usize>> {
    let bad = |_| Error::Invalid(format!("cannot parse grid {spec:?}"));
    if let Some((lo, hi)) = spec.split_once(':') {
        let lo: usize = lo.parse().map_err(bad)?;
        let hi: usize = hi.parse().map_err(bad)?;
        if lo == 0 || hi < lo {
            return Err(Error::Invalid(format!("grid {spec:?} must be a positive range lo:hi")));
        }
        return Ok((lo..=hi).collect());
    }
    let grid: Vec<usize> = spec
        .split(',')
        .map(|tok| tok.trim().parse::<usize>().map_err(bad))
        .collect::<Result<_>>()?;
    if grid.is_empty() || grid.contains(&0) {
        return Err(Error::Invalid(format!("grid {spec:?} must hold positive sizes")));
    }
    Ok(grid)
}

fn run_algo(algo: BenchAlgo, inst: &Ssvd, delta: f64) -> Result<SolveReport> {
    match algo {
        BenchAlgo::Frobenius => select_frobenius(inst, &FrobeniusSolver::default()),
        BenchAlgo::RowCol => select_rowcol(inst),
        BenchAlgo::Spectral => select_spectral(inst),
        BenchAlgo::Greedy => greedy_ssvd(inst),
        BenchAlgo::LocalSearch => {
            local_search_ssvd(inst, &LocalSearchConfig { delta, max_sweeps: 1000 }, None)
        }
        BenchAlgo::Exact => ssvd_branch_and_cut(inst, &BncConfig::default()),
        BenchAlgo::Brute => brute_force_ssvd(inst),
    }
}

fn load_sidecar(path: &Path) -> Option<Sidecar> {
    let sidecar_path = format!("{}.json", path.display());
    let text = std::fs::read_to_string(sidecar_path).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    let (matrix, instance_name, sidecar): (Matrix, String, Option<Sidecar>) = match &spec.source {
        BenchSource::File(path) => {
            (load_input(path)?, path.display().to_string(), load_sidecar(path))
        }
        BenchSource::Gaussian { m, n, seed } => {
            let g = gaussian(*m, *n, *seed)?;
            (g.matrix, format!("gaussian-{m}x{n}-seed{seed}"), None)
        }
    };
    let (m, n) = (matrix.rows(), matrix.cols());

    let mut rows = Vec::new();
    for &k in &spec.k_grid {
        if k == 0 || k > m.min(n) {
            eprintln!("bench: skipping k={k}: out of range 1..={}", m.min(n));
            continue;
        }
        let full = ky_fan_norm(&matrix, k)?;
        for &s1 in &spec.s1_grid {
            for &s2 in &spec.s2_grid {
                let inst = match Ssvd::new(matrix.clone(), s1, s2, k) {
                    Ok(inst) => inst,
                    Err(e) => {
                        eprintln!("bench: skipping s1={s1} s2={s2} k={k}: {e}");
                        continue;
                    }
                };
                let oracle = if spec.oracle {
                    let from_sidecar = sidecar.as_ref().and_then(|sc| {
                        (sc.budgets() == Some((s1, s2, k))).then_some(sc.known_optimum).flatten()
                    });
                    from_sidecar.or_else(|| match brute_force_ssvd(&inst) {
                        Ok(r) => Some(r.objective),
                        Err(e) => {
                            eprintln!("bench: no oracle for s1={s1} s2={s2} k={k}: {e}");
                            None
                        }
                    })
                } else {
                    None
                };
                for rep in 0..spec.reps.max(1) {
                    for &algo in &spec.algorithms {
                        let report = match run_algo(algo, &inst, spec.delta) {
                            Ok(r) => r,
                            Err(e) => {
                                eprintln!("bench: {} failed at s1={s1} s2={s2} k={k}: {e}", algo.name());
                                continue;
                            }
                        };
                        rows.push(BenchRow {
                            instance: instance_name.clone(),
                            algorithm: algo.name().to_string(),
                            s1,
                            s2,
                            k,
                            rep,
                            objective: report.objective,
                            ratio_full: (full > 0.0).then(|| report.objective / full),
                            ratio_oracle: oracle
                                .and_then(|o| (o > 0.0).then(|| report.objective / o)),
                            wall_seconds: report.wall_seconds,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub const BENCH_CSV_HEADER: &str =
    "instance,algorithm,s1,s2,k,rep,objective,ratio_full,ratio_oracle,wall_seconds";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.algorithm,
            r.s1,
            r.s2,
            r.k,
            r.rep,
            r.objective,
            r.ratio_full.map(|v| v.to_string()).unwrap_or_default(),
            r.ratio_oracle.map(|v| v.to_string()).unwrap_or_default(),
            r.wall_seconds,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("3:5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_grid("4").unwrap(), vec![4]);
        assert_eq!(parse_grid("2,7,1").unwrap(), vec![2, 7, 1]);
        assert!(parse_grid("0:2").is_err());
        assert!(parse_grid("x").is_err());
    }

    #[test]
    fn infeasible_grid_points_are_skipped() {
        let spec = BenchSpec {
            source: BenchSource::Gaussian { m: 4, n: 4, seed: 1 },
            algorithms: vec![BenchAlgo::Greedy],
            s1_grid: vec![2, 9],
            s2_grid: vec![2],
            k_grid: vec![2],
            reps: 1,
            oracle: false,
            delta: 1e-6,
        };
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].s1, 2);
    }
}
