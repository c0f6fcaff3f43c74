//! Approximation-ratio guarantees, dominance and search invariants,
//! verified against the brute-force oracle on small instances.

mod common;

use common::{random_matrix, random_psd, TestRng};
use ssvd_core::exact::{brute_force_spca, brute_force_ssvd, FrobeniusSolver};
use ssvd_core::linalg::ky_fan_norm;
use ssvd_core::model::{SpcaInstance, SsvdInstance};
use ssvd_core::search::{
    greedy_spca, greedy_spca_trace, greedy_ssvd, greedy_ssvd_trace, local_search_spca,
    local_search_ssvd, LocalSearchConfig,
};
use ssvd_core::selection::{select_frobenius, select_rowcol, select_spectral, spca_select, SelectionVariant};

fn random_ssvd_instance(rng: &mut TestRng) -> SsvdInstance<f64> {
    let m = 4 + rng.index(5);
    let n = 4 + rng.index(5);
    let k = 1 + rng.index(3);
    let s1 = k + rng.index(4.min(m) - k + 1);
    let s2 = k + rng.index(4.min(n) - k + 1);
    SsvdInstance::new(random_matrix(rng, m, n), s1.min(4), s2.min(4), k).unwrap()
}

#[test]
fn selection_ratio_guarantees_hold_against_brute_force() {
    let mut rng = TestRng(61);
    let solver = FrobeniusSolver::default();
    for trial in 0..30 {
        let inst = random_ssvd_instance(&mut rng);
        let (m, n) = (inst.matrix().rows(), inst.matrix().cols());
        let (s1, s2, k) = (inst.s1(), inst.s2(), inst.k());
        let opt = brute_force_ssvd(&inst).unwrap().objective;
        let slack = 1e-9 * opt.max(1.0);

        let frob = select_frobenius(&inst, &solver).unwrap().objective;
        assert!(
            frob >= opt / (s1.min(s2) as f64).sqrt() - slack,
            "trial {trial}: frobenius ratio violated"
        );

        let rowcol = select_rowcol(&inst).unwrap().objective;
        assert!(
            rowcol >= opt / ((k * s1.min(s2)) as f64).sqrt() - slack,
            "trial {trial}: rowcol ratio violated"
        );

        let spectral = select_spectral(&inst).unwrap().objective;
        assert!(
            spectral >= opt * ((s1 * s2) as f64).sqrt() / (k as f64 * ((m * n) as f64).sqrt()) - slack,
            "trial {trial}: spectral ratio violated"
        );

        let greedy = greedy_ssvd(&inst).unwrap().objective;
        assert!(
            greedy >= opt / ((k * s1 * s2) as f64).sqrt() - slack,
            "trial {trial}: greedy ratio violated"
        );
    }
}

#[test]
fn spca_ratio_guarantees_hold_against_brute_force() {
    let mut rng = TestRng(67);
    let solver = FrobeniusSolver::default();
    for trial in 0..20 {
        let n = 4 + rng.index(5);
        let k = 1 + rng.index(3);
        let s = (k + rng.index(4 - k + 1)).min(n);
        let inst = SpcaInstance::new(random_psd(&mut rng, n), s, k).unwrap();
        let opt = brute_force_spca(&inst).unwrap().objective;
        let slack = 1e-9 * opt.max(1.0);

        let frob = spca_select(&inst, SelectionVariant::Frobenius, Some(&solver)).unwrap().objective;
        assert!(frob >= opt / (s as f64).sqrt() - slack, "trial {trial}: spca frobenius");

        let rowcol = spca_select(&inst, SelectionVariant::RowCol, None).unwrap().objective;
        assert!(rowcol >= opt / ((k * s) as f64).sqrt() - slack, "trial {trial}: spca rowcol");

        let spectral = spca_select(&inst, SelectionVariant::Spectral, None).unwrap().objective;
        assert!(spectral >= opt * s as f64 / (k * n) as f64 - slack, "trial {trial}: spca spectral");

        let greedy = greedy_spca(&inst).unwrap().objective;
        assert!(greedy >= opt * k as f64 / s as f64 - slack, "trial {trial}: spca greedy");
    }
}

#[test]
fn local_search_dominates_greedy_and_bounds_swap_count() {
    let mut rng = TestRng(71);
    let cfg = LocalSearchConfig::default();
    for _ in 0..15 {
        let inst = random_ssvd_instance(&mut rng);
        let greedy = greedy_ssvd(&inst).unwrap();
        let ls = local_search_ssvd(&inst, &cfg, None).unwrap();
        assert!(ls.objective >= greedy.objective);
        assert!(ls.converged);
        // Each accepted swap multiplies the objective by more than 1+delta.
        if greedy.objective > 0.0 && ls.iterations > 0 {
            let bound = (ls.objective / greedy.objective).ln() / (1.0 + cfg.delta).ln();
            assert!(
                (ls.iterations as f64) <= bound + 1e-6,
                "swap count {} above log bound {bound}",
                ls.iterations
            );
        }
    }
}

#[test]
fn spca_local_search_dominates_greedy() {
    let mut rng = TestRng(73);
    let cfg = LocalSearchConfig::default();
    for _ in 0..10 {
        let n = 5 + rng.index(4);
        let k = 1 + rng.index(2);
        let s = k + rng.index(3);
        let inst = SpcaInstance::new(random_psd(&mut rng, n), s.min(n), k).unwrap();
        let greedy = greedy_spca(&inst).unwrap();
        let ls = local_search_spca(&inst, &cfg, None).unwrap();
        assert!(ls.objective >= greedy.objective);
    }
}

#[test]
fn greedy_traces_are_nondecreasing() {
    let mut rng = TestRng(79);
    for _ in 0..10 {
        let inst = random_ssvd_instance(&mut rng);
        let (_, trace) = greedy_ssvd_trace(&inst).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-10);
        }
        let n = 5 + rng.index(3);
        let spca = SpcaInstance::new(random_psd(&mut rng, n), 4, 2).unwrap();
        let (_, trace) = greedy_spca_trace(&spca).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-10);
        }
    }
}

#[test]
fn rowcol_evaluates_exactly_m_plus_n_candidates() {
    let mut rng = TestRng(83);
    let inst = SsvdInstance::new(random_matrix(&mut rng, 6, 9), 3, 3, 2).unwrap();
    let r = select_rowcol(&inst).unwrap();
    assert_eq!(r.iterations, 15);
}

#[test]
fn principal_blocks_bound_rectangular_blocks_on_psd_matrices() {
    // For PSD B and equal-sized subsets, the rectangular Ky Fan value never
    // beats the better principal block.
    let mut rng = TestRng(89);
    for _ in 0..50 {
        let n = 4 + rng.index(5);
        let b = random_psd(&mut rng, n);
        let k = 1 + rng.index(2);
        let size = (k + rng.index(3)).min(n);
        let s1 = rng.subset(n, size);
        let s2 = rng.subset(n, size);
        let rect = ky_fan_norm(&b.submatrix(&s1, &s2).unwrap(), k).unwrap();
        let p1 = ky_fan_norm(&b.submatrix(&s1, &s1).unwrap(), k).unwrap();
        let p2 = ky_fan_norm(&b.submatrix(&s2, &s2).unwrap(), k).unwrap();
        assert!(rect <= p1.max(p2) + 1e-9, "{rect} > max({p1}, {p2})");
    }
}

#[test]
fn spca_greedy_value_is_bounded_by_largest_diagonals() {
    // The empty-anchor cut of the master problem: any value is at most the
    // sum of the s largest diagonal entries.
    let mut rng = TestRng(97);
    for _ in 0..10 {
        let n = 5 + rng.index(4);
        let inst = SpcaInstance::new(random_psd(&mut rng, n), 3, 2).unwrap();
        let g = greedy_spca(&inst).unwrap();
        let mut diags: Vec<f64> = (0..n).map(|i| inst.matrix().get(i, i)).collect();
        diags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let cap: f64 = diags[..3].iter().sum();
        assert!(g.objective <= cap + 1e-9);
    }
}

#[test]
fn report_objectives_match_their_selections() {
    use ssvd_core::model::objective;
    let mut rng = TestRng(211);
    let solver = FrobeniusSolver::default();
    for _ in 0..6 {
        let inst = random_ssvd_instance(&mut rng);
        for report in [
            select_frobenius(&inst, &solver).unwrap(),
            select_rowcol(&inst).unwrap(),
            select_spectral(&inst).unwrap(),
            greedy_ssvd(&inst).unwrap(),
            local_search_ssvd(&inst, &LocalSearchConfig::default(), None).unwrap(),
        ] {
            let recomputed = objective(&inst, &report.selection).unwrap();
            assert!(
                (report.objective - recomputed).abs() <= 1e-9 * recomputed.max(1.0),
                "{}: reported {} vs recomputed {recomputed}",
                report.algorithm,
                report.objective
            );
        }
    }
}

#[test]
fn all_intermediate_selections_respect_budgets() {
    let mut rng = TestRng(101);
    for _ in 0..10 {
        let inst = random_ssvd_instance(&mut rng);
        let g = greedy_ssvd(&inst).unwrap();
        assert_eq!(g.selection.rows().len(), inst.s1());
        assert_eq!(g.selection.cols().len(), inst.s2());
        assert!(g.selection.rows().iter().all(|&i| i < inst.matrix().rows()));
        assert!(g.selection.cols().iter().all(|&j| j < inst.matrix().cols()));
        let ls = local_search_ssvd(&inst, &LocalSearchConfig::default(), None).unwrap();
        assert_eq!(ls.selection.rows().len(), inst.s1());
        assert_eq!(ls.selection.cols().len(), inst.s2());
    }
}
