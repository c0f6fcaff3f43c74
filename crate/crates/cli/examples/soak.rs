use ssvd_cli::gen::{example1, example3, example4, example7, gaussian, psd_gram};
use ssvd_cli::rng::SplitMix64;
use ssvd_core::exact::{brute_force_spca, brute_force_ssvd, spca_branch_and_cut, ssvd_branch_and_cut, BncConfig};
use ssvd_core::linalg::DenseMatrix;
use ssvd_core::model::{SpcaInstance, SsvdInstance};

fn main() {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    // Random soak: mixed shapes.
    for seed in 0..200u64 {
        let mut rng = SplitMix64::new(seed * 77 + 1);
        let m = 3 + (rng.next_u64() % 6) as usize;
        let n = 3 + (rng.next_u64() % 6) as usize;
        let k = 1 + (rng.next_u64() % 3) as usize;
        let maxb = 4.min(m).min(n);
        if k > maxb { continue; }
        let s1 = k + (rng.next_u64() as usize % (maxb - k + 1));
        let s2 = k + (rng.next_u64() as usize % (maxb - k + 1));
        // Mix: gaussian, quantized (many ties), sparse.
        let mode = seed % 3;
        let entries: Vec<f64> = (0..m*n).map(|_| {
            let v = rng.normal();
            match mode {
                0 => v,
                1 => (v * 2.0).round() / 2.0,
                _ => if rng.uniform() < 0.6 { 0.0 } else { v.signum() },
            }
        }).collect();
        let a = DenseMatrix::new(m, n, entries).unwrap();
        let inst = SsvdInstance::new(a, s1, s2, k).unwrap();
        let e = ssvd_branch_and_cut(&inst, &BncConfig::default()).unwrap();
        let b = brute_force_ssvd(&inst).unwrap();
        let rel = (e.objective - b.objective).abs() / b.objective.max(1.0);
        worst = worst.max(rel);
        assert!(rel <= 1e-8, "seed {seed}: bnc {} vs brute {}", e.objective, b.objective);
        assert!(e.converged);
        count += 1;
    }
    println!("ssvd soak: {count} instances, worst rel err {worst:.2e}");

    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let n = 4 + (seed % 6) as usize;
        let k = 1 + (seed % 3) as usize;
        let s = (k + (seed % 3) as usize).min(4).max(k);
        let g = psd_gram(n, seed * 31 + 5).unwrap();
        let inst = SpcaInstance::new(g.matrix, s, k).unwrap();
        let e = spca_branch_and_cut(&inst, &BncConfig::default()).unwrap();
        let b = brute_force_spca(&inst).unwrap();
        let rel = (e.objective - b.objective).abs() / b.objective.max(1.0);
        worst = worst.max(rel);
        assert!(rel <= 1e-8, "seed {seed}");
    }
    println!("spca soak: 100 instances, worst rel err {worst:.2e}");

    // Structured instances through the exact solver.
    for (name, g, s1, s2, k) in [
        ("example1", example1(3, 4).unwrap(), 3, 4, 3),
        ("example3", example3(2, 2, 2).unwrap(), 4, 4, 2),
        ("example4", example4(2, 2, 2).unwrap(), 4, 4, 2),
    ] {
        let opt = g.sidecar.known_optimum.unwrap();
        let inst = SsvdInstance::new(g.matrix, s1, s2, k).unwrap();
        let e = ssvd_branch_and_cut(&inst, &BncConfig::default()).unwrap();
        assert!((e.objective - opt).abs() <= 1e-8 * opt, "{name}: {} vs {opt}", e.objective);
        println!("{name}: exact {} == known {opt} (nodes {})", e.objective, e.nodes);
    }
    let g = example7(2, 2).unwrap();
    let opt = g.sidecar.known_optimum.unwrap();
    let inst = SpcaInstance::new(g.matrix, 4, 2).unwrap();
    let e = spca_branch_and_cut(&inst, &BncConfig::default()).unwrap();
    assert!((e.objective - opt).abs() <= 1e-8 * opt);
    println!("example7: exact {} == known {opt}", e.objective);

    // Degenerate-spectrum gaussians with duplicated rows/columns.
    for seed in 0..50u64 {
        let g = gaussian(4, 5, seed + 900).unwrap();
        let mut rows: Vec<Vec<f64>> = (0..4).map(|i| g.matrix.row(i).to_vec()).collect();
        rows.push(rows[1].clone());
        rows.push(rows[0].iter().map(|v| -v).collect());
        let a = DenseMatrix::from_rows(&rows).unwrap();
        let inst = SsvdInstance::new(a, 3, 3, 2).unwrap();
        let e = ssvd_branch_and_cut(&inst, &BncConfig::default()).unwrap();
        let b = brute_force_ssvd(&inst).unwrap();
        assert!((e.objective - b.objective).abs() <= 1e-8 * b.objective.max(1.0), "dup seed {seed}");
    }
    println!("duplicated-row soak: 50 instances ok");
}
