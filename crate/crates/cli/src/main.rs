use clap::{Parser, Subcommand};
use ssvd_cli::bench::{bench_csv, parse_grid, run_bench, BenchAlgo, BenchSource, BenchSpec};
use ssvd_cli::commands::{run_exact, run_solve, summary, Algo, ExactOptions, SolveOptions};
use ssvd_cli::gen::{generate, GenParams};
use ssvd_cli::scan::{run_scan, scan_csv};
use ssvd_core::error::{Error, Result};
use ssvd_core::model::io::{save_matrix, save_report, MatrixFormat, ReportFormat};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

#[derive(Parser)]
#[command(name = "ssvd")]
#[command(about = "Sparse truncated SVD: best-submatrix selection solvers")]
struct Cli {
    /// Worker threads for candidate scans (default: SSVD_THREADS or 1).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Generate a test instance plus a JSON sidecar with its known optimum.
    Gen {
        /// example1..example8, gaussian, psd-gram or hadamard.
        kind: String,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        t1: Option<usize>,
        #[arg(long)]
        t2: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        s2: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output matrix path (.mtx, .mm or .csv).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an approximation algorithm on a matrix file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s1: usize,
        #[arg(long)]
        s2: usize,
        #[arg(short, long)]
        k: usize,
        /// frobenius, rowcol, spectral, greedy or local-search.
        #[arg(long)]
        algo: String,
        /// Treat the input as a PSD covariance and select one subset.
        #[arg(long)]
        spca: bool,
        /// Strict improvement factor for local search.
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 1000)]
        max_sweeps: usize,
        /// Also compute the brute-force optimum for comparison.
        #[arg(long)]
        oracle: bool,
        /// Write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Solve to optimality by branch-and-cut (or enumeration with --brute).
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s1: usize,
        #[arg(long)]
        s2: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        spca: bool,
        #[arg(long)]
        brute: bool,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep algorithms over an (s1, s2, k) grid and write a CSV table.
    Bench {
        /// Matrix file to benchmark (alternative to --gen).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Built-in source: currently "gaussian".
        #[arg(long)]
        gen: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated algorithms; "exact" and "brute" also allowed.
        #[arg(long)]
        algos: String,
        /// Grid as lo:hi, a,b,c or a single value.
        #[arg(long)]
        s1_grid: String,
        #[arg(long)]
        s2_grid: String,
        #[arg(long)]
        k_grid: String,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Add a ratio-to-oracle column (sidecar optimum or brute force).
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-frame objectives over an ordered sequence of matrices.
    Scan {
        /// Matrix files, one per frame, all of equal shape.
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        s1: usize,
        #[arg(long)]
        s2: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        algo: String,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Numeric(_) => EXIT_NUMERIC,
        _ => EXIT_VALIDATION,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let threads = cli
        .threads
        .or_else(|| std::env::var("SSVD_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1);
    ssvd_core::parallel::set_thread_count(threads);

    match cli.command {
        Commands::Gen { kind, k, c, t, t1, t2, s, s2, m, n, seed, out } => {
            let params = GenParams { k, c, t, t1, t2, s, s2, m, n, seed };
            let generated = generate(&kind, &params)?;
            save_matrix(&generated.matrix, &out, MatrixFormat::from_path(&out)?)?;
            let sidecar_path = PathBuf::from(format!("{}.json", out.display()));
            let sidecar = serde_json::to_string_pretty(&generated.sidecar)
                .expect("sidecar serialization cannot fail");
            std::fs::write(&sidecar_path, sidecar)?;
            println!(
                "wrote {}x{} matrix to {} (sidecar {})",
                generated.matrix.rows(),
                generated.matrix.cols(),
                out.display(),
                sidecar_path.display()
            );
            Ok(0)
        }
        Commands::Solve { input, s1, s2, k, algo, spca, delta, max_sweeps, oracle, json } => {
            let opts = SolveOptions {
                input,
                s1,
                s2,
                k,
                algo: algo.parse::<Algo>()?,
                spca,
                delta,
                max_sweeps,
                oracle,
            };
            let output = run_solve(&opts)?;
            println!("{}", summary(&output.report));
            if let Some(oracle_value) = output.oracle {
                let ratio = if oracle_value > 0.0 {
                    output.report.objective / oracle_value
                } else {
                    1.0
                };
                println!("oracle: optimum {:.9} ratio {:.6}", oracle_value, ratio);
            }
            if let Some(path) = json {
                save_report(&output.report, &path, ReportFormat::Json)?;
            }
            Ok(0)
        }
        Commands::Exact { input, s1, s2, k, spca, brute, time_limit, node_cap, json } => {
            let opts = ExactOptions { input, s1, s2, k, spca, brute, time_limit, node_cap };
            let report = run_exact(&opts)?;
            println!("{}", summary(&report));
            if let Some(path) = json {
                save_report(&report, &path, ReportFormat::Json)?;
            }
            Ok(if report.converged { 0 } else { EXIT_TIMEOUT })
        }
        Commands::Bench {
            input,
            gen,
            m,
            n,
            seed,
            algos,
            s1_grid,
            s2_grid,
            k_grid,
            reps,
            oracle,
            delta,
            out,
        } => {
            let source = match (input, gen.as_deref()) {
                (Some(path), None) => BenchSource::File(path),
                (None, Some("gaussian")) => BenchSource::Gaussian {
                    m: m.ok_or_else(|| Error::Invalid("--gen gaussian needs --m".into()))?,
                    n: n.ok_or_else(|| Error::Invalid("--gen gaussian needs --n".into()))?,
                    seed: seed.unwrap_or(0),
                },
                (None, Some(other)) => {
                    return Err(Error::Invalid(format!("unknown bench source {other:?}")))
                }
                _ => {
                    return Err(Error::Invalid(
                        "bench needs exactly one of --input or --gen".into(),
                    ))
                }
            };
            let algorithms: Vec<BenchAlgo> = algos
                .split(',')
                .map(|tok| tok.trim().parse::<BenchAlgo>())
                .collect::<Result<_>>()?;
            let spec = BenchSpec {
                source,
                algorithms,
                s1_grid: parse_grid(&s1_grid)?,
                s2_grid: parse_grid(&s2_grid)?,
                k_grid: parse_grid(&k_grid)?,
                reps,
                oracle,
                delta,
            };
            let rows = run_bench(&spec)?;
            std::fs::write(&out, bench_csv(&rows))?;
            println!("wrote {} bench rows to {}", rows.len(), out.display());
            Ok(0)
        }
        Commands::Scan { inputs, s1, s2, k, algo, delta, out } => {
            let rows = run_scan(&inputs, s1, s2, k, algo.parse::<Algo>()?, delta)?;
            std::fs::write(&out, scan_csv(&rows))?;
            println!("wrote {} scan rows to {}", rows.len(), out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
