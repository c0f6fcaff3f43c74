//! Instance semantics and file round-trips through real files.

mod common;

use common::{oracle_singular_values, random_matrix, TestRng};
use ssvd_core::exact::brute_force_ssvd;
use ssvd_core::linalg::{ky_fan_norm, DenseMatrix};
use ssvd_core::model::io::{
    load_matrix, load_report_json, save_matrix, save_report, MatrixFormat, ReportFormat,
};
use ssvd_core::model::{objective, Selection, SolveReport, SsvdInstance};

#[test]
fn objective_matches_direct_svd_of_extracted_submatrix() {
    let mut rng = TestRng(41);
    let a = random_matrix(&mut rng, 6, 7);
    let inst = SsvdInstance::new(a.clone(), 4, 4, 2).unwrap();
    for _ in 0..10 {
        let rows = rng.subset(6, 3);
        let cols = rng.subset(7, 4);
        let sel = Selection::new(rows.clone(), cols.clone());
        let got = objective(&inst, &sel).unwrap();
        let sub = a.submatrix(&rows, &cols).unwrap();
        let oracle = oracle_singular_values(&sub);
        let expect: f64 = oracle[..2].iter().sum();
        assert!((got - expect).abs() <= 1e-9 * expect.max(1.0));
    }
}

#[test]
fn matrix_file_roundtrips_preserve_entries() {
    let mut rng = TestRng(43);
    let a = random_matrix(&mut rng, 4, 5);
    let dir = std::env::temp_dir().join("ssvd-model-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();

    let mm = dir.join("a.mtx");
    save_matrix(&a, &mm, MatrixFormat::MatrixMarket).unwrap();
    let back: DenseMatrix<f64> = load_matrix(&mm, MatrixFormat::MatrixMarket).unwrap();
    assert_eq!(back.entries(), a.entries());

    let csv = dir.join("a.csv");
    save_matrix(&a, &csv, MatrixFormat::Csv).unwrap();
    let back: DenseMatrix<f64> = load_matrix(&csv, MatrixFormat::Csv).unwrap();
    assert_eq!(back.entries(), a.entries());
}

#[test]
fn report_json_roundtrips_through_file() {
    let mut report = SolveReport::new("rowcol", 2.5, Selection::new(vec![0, 3], vec![1]));
    report.upper_bound = Some(3.0);
    report.gap_percent = Some(20.0);
    report.nodes = 5;
    report.wall_seconds = 0.25;
    let dir = std::env::temp_dir().join("ssvd-model-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    save_report(&report, &path, ReportFormat::Json).unwrap();
    let back = load_report_json(&path).unwrap();
    assert_eq!(back, report);
}

#[test]
fn permuting_rows_and_columns_permutes_the_optimum() {
    let mut rng = TestRng(47);
    let a = random_matrix(&mut rng, 5, 5);
    let inst = SsvdInstance::new(a.clone(), 2, 2, 2).unwrap();
    let base = brute_force_ssvd(&inst).unwrap();

    // Reverse both row and column order.
    let mut p = DenseMatrix::zeros(5, 5);
    for i in 0..5 {
        for j in 0..5 {
            p.set(i, j, a.get(4 - i, 4 - j));
        }
    }
    let permuted = SsvdInstance::new(p, 2, 2, 2).unwrap();
    let perm = brute_force_ssvd(&permuted).unwrap();
    assert!((base.objective - perm.objective).abs() <= 1e-9 * base.objective.max(1.0));

    let mapped: Vec<usize> = perm.selection.rows().iter().map(|&i| 4 - i).rev().collect();
    assert_eq!(
        objective(&inst, &Selection::new(mapped, perm.selection.cols().iter().map(|&j| 4 - j).collect()))
            .unwrap(),
        perm.objective
    );
}

#[test]
fn degenerate_budgets_reduce_to_truncated_svd() {
    let mut rng = TestRng(53);
    let a = random_matrix(&mut rng, 5, 6);
    let inst = SsvdInstance::new(a.clone(), 5, 6, 3).unwrap();
    let full = ky_fan_norm(&a, 3).unwrap();
    let sel = Selection::new((0..5).collect(), (0..6).collect());
    let got = objective(&inst, &sel).unwrap();
    assert!((got - full).abs() <= 1e-12 * full.max(1.0));
    let brute = brute_force_ssvd(&inst).unwrap();
    assert!((brute.objective - full).abs() <= 1e-9 * full.max(1.0));
}
