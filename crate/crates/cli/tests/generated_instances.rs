//! Exact solvers on the generated worst-case constructions.

use ssvd_cli::gen::{example2, example5, example8, psd_gram};
use ssvd_core::exact::{
    brute_force_spca, brute_force_ssvd, spca_branch_and_cut, ssvd_branch_and_cut, BncConfig,
};
use ssvd_core::model::{SpcaInstance, SsvdInstance};

#[test]
fn exact_solver_cracks_the_rowcol_worst_case() {
    // 24 x 24 with budgets (4, 4): far beyond the enumeration cap, solved
    // by branch-and-cut to the known optimum.
    let g = example2(2, 2, 2).unwrap();
    let opt = g.sidecar.known_optimum.unwrap();
    let inst = SsvdInstance::new(g.matrix, 4, 4, 2).unwrap();
    let r = ssvd_branch_and_cut(&inst, &BncConfig::default()).unwrap();
    assert!(r.converged);
    assert!((r.objective - opt).abs() <= 1e-9 * opt);
    assert_eq!(r.gap_percent, Some(0.0));
}

#[test]
fn exact_spca_on_the_block_tie_instance() {
    let g = example5(3).unwrap();
    let opt = g.sidecar.known_optimum.unwrap();
    let inst = SpcaInstance::new(g.matrix, 3, 3).unwrap();
    let r = spca_branch_and_cut(&inst, &BncConfig::default()).unwrap();
    assert!((r.objective - opt).abs() <= 1e-9 * opt);
    let brute = brute_force_spca(&inst).unwrap();
    assert!((brute.objective - opt).abs() <= 1e-9 * opt);
}

#[test]
fn brute_force_oracles_agree_on_psd_square_instances() {
    for seed in 0..8u64 {
        let n = 5 + (seed % 3) as usize;
        let g = psd_gram(n, 4242 + seed).unwrap();
        let k = 1 + (seed % 2) as usize;
        let s = k + 1;
        let spca = SpcaInstance::new(g.matrix.clone(), s, k).unwrap();
        let ssvd = SsvdInstance::new(g.matrix, s, s, k).unwrap();
        let a = brute_force_spca(&spca).unwrap().objective;
        let b = brute_force_ssvd(&ssvd).unwrap().objective;
        assert!((a - b).abs() <= 1e-9 * a.max(1.0), "seed {seed}: {a} vs {b}");
    }
}

#[test]
fn greedy_worst_case_still_solved_exactly() {
    let g = example8(3, 2).unwrap();
    let opt = g.sidecar.known_optimum.unwrap();
    let inst = SpcaInstance::new(g.matrix, 3, 2).unwrap();
    let r = spca_branch_and_cut(&inst, &BncConfig::default()).unwrap();
    assert!((r.objective - opt).abs() <= 1e-9 * opt);
}
