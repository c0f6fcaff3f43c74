//! Shared helpers for integration tests: a seeded generator and
//! implementation-independent oracles.

// Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use ssvd_core::linalg::{sym_eigen, DenseMatrix};

pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    pub fn signed(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (2.0 / (1u64 << 53) as f64) - 1.0
    }

    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Random sorted subset of the given size.
    pub fn subset(&mut self, n: usize, size: usize) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(size);
        for _ in 0..size {
            let at = self.index(pool.len());
            out.push(pool.swap_remove(at));
        }
        out.sort_unstable();
        out
    }
}

pub fn random_matrix(rng: &mut TestRng, m: usize, n: usize) -> DenseMatrix<f64> {
    DenseMatrix::new(m, n, (0..m * n).map(|_| rng.signed()).collect()).unwrap()
}

/// Random PSD matrix as a symmetrized Gram matrix of an (n+1) x n factor.
pub fn random_psd(rng: &mut TestRng, n: usize) -> DenseMatrix<f64> {
    let x = random_matrix(rng, n + 1, n);
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = (0..n + 1).map(|r| x.get(r, i) * x.get(r, j)).sum();
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    g
}

/// Singular values by an independent route: square roots of the
/// eigenvalues of the Gram matrix, via the symmetric eigensolver.
pub fn oracle_singular_values(a: &DenseMatrix<f64>) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let (small, gram) = if m >= n {
        let mut g = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v: f64 = (0..m).map(|r| a.get(r, i) * a.get(r, j)).sum();
                g.set(i, j, v);
            }
        }
        (n, g)
    } else {
        let mut g = DenseMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let v: f64 = (0..n).map(|c| a.get(i, c) * a.get(j, c)).sum();
                g.set(i, j, v);
            }
        }
        (m, g)
    };
    let (vals, _) = sym_eigen(&gram).unwrap();
    (0..small).map(|i| vals[i].max(0.0).sqrt()).collect()
}

/// Fixed-size subsets in lexicographic order, written independently of the
/// library's iterator.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
