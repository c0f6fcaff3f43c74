//! Instance generators: the eight worst-case constructions with known
//! optima, plus seeded gaussian, PSD Gram and Hadamard matrices.
//!
//! Each generated file gets a JSON sidecar recording the generator, its
//! parameters, and — where the construction proves one — the optimal value
//! and an optimal selection.
//!
//! Block layouts are fixed so that the deterministic smallest-index
//! tie-breaking used by every solver walks the worst-case path the
//! constructions were designed around: all-zero rows/columns come first
//! where ties must fall on them (examples 2 and 6), and the remaining
//! constructions keep their natural block order.

use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use ssvd_core::error::{Error, Result};
use ssvd_core::linalg::hadamard_of_order;
use ssvd_core::model::Selection;
use ssvd_core::{linalg::hadamard, Matrix};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub generator: String,
    pub params: BTreeMap<String, u64>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub known_optimum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub known_selection: Option<Selection>,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub matrix: Matrix,
    pub sidecar: Sidecar,
}

impl Sidecar {
    fn new(generator: &str) -> Self {
        Self {
            generator: generator.to_string(),
            params: BTreeMap::new(),
            seed: None,
            known_optimum: None,
            known_selection: None,
        }
    }

    fn param(mut self, key: &str, value: usize) -> Self {
        self.params.insert(key.to_string(), value as u64);
        self
    }

    /// Budgets recorded by the generator, as (s1, s2, k).
    pub fn budgets(&self) -> Option<(usize, usize, usize)> {
        let k = *self.params.get("k")? as usize;
        if let Some(&s) = self.params.get("s") {
            return Some((s as usize, s as usize, k));
        }
        let s1 = *self.params.get("s1")? as usize;
        let s2 = *self.params.get("s2")? as usize;
        Some((s1, s2, k))
    }
}

fn constraint(cond: bool, message: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invalid(message.into()))
    }
}

/// Ones block next to a sparse diagonal block of equal squared mass; the
/// mass criterion cannot tell them apart but their Ky Fan values differ by
/// the full `sqrt(min(s1, s2))` factor.
pub fn example1(k: usize, s2: usize) -> Result<Generated> {
    constraint(k >= 1, "example1 requires k >= 1")?;
    constraint(s2 > k, format!("example1 requires s2 > s1 = k, got k={k}, s2={s2}"))?;
    let s1 = k;
    let (m, n) = (2 * s1, 2 * s2);
    let mut a = Matrix::zeros(m, n);
    for i in 0..s1 {
        for j in 0..s2 {
            a.set(i, j, 1.0);
        }
    }
    let d = s1 as f64 * (s2 as f64).sqrt() / k as f64;
    for i in 0..k {
        a.set(s1 + i, s2 + i, d);
    }
    let sidecar = Sidecar::new("example1").param("k", k).param("s1", s1).param("s2", s2);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(s1 as f64 * (s2 as f64).sqrt()),
            known_selection: Some(Selection::new(
                (s1..2 * s1).collect(),
                (s2..2 * s2).collect(),
            )),
            ..sidecar
        },
    })
}

/// Per-column scans see only unit-norm columns while a Hadamard block of
/// value `sqrt(k s1 s2)` hides in the shared columns. Zero rows and null
/// columns lead the layout so zero-value ties select them.
pub fn example2(k: usize, c: usize, t: usize) -> Result<Generated> {
    constraint(k >= 1 && c >= 1 && t >= 1, "example2 requires k, c, t >= 1")?;
    let s1 = c * k;
    let s2 = 1usize << t;
    constraint(s2 >= k, format!("example2 requires s2 = 2^t >= k, got s2={s2}, k={k}"))?;
    let m = 2 * s1 + s1 * s2;
    let n = 2 * s2 + s1 * s2;
    let h = hadamard_of_order::<f64>(s2)?;
    let mut a = Matrix::zeros(m, n);

    let w_row = |w: usize| s1 + s1 * s2 + w;
    let a1_col = |w: usize, off: usize| s2 + w * s2 + off;
    let shared_col = |l: usize| s2 + s1 * s2 + l;

    for w in 0..s1 {
        for off in 0..s2 {
            a.set(w_row(w), a1_col(w, off), 1.0);
        }
        for l in 0..s2 {
            a.set(w_row(w), shared_col(l), h.get(l, w / c));
        }
    }
    for l in 0..s2 {
        for r in 0..s1 {
            a.set(s1 + l * s1 + r, shared_col(l), 1.0);
        }
    }

    let sidecar = Sidecar::new("example2")
        .param("k", k)
        .param("c", c)
        .param("t", t)
        .param("s1", s1)
        .param("s2", s2);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(((k * s1 * s2) as f64).sqrt()),
            known_selection: Some(Selection::new(
                (s1 + s1 * s2..2 * s1 + s1 * s2).collect(),
                (s2 + s1 * s2..2 * s2 + s1 * s2).collect(),
            )),
            ..sidecar
        },
    })
}

/// All nonzero singular values coincide, so the top pair mixes a dominant
/// ones block into the trimmed supports while the true optimum sits in the
/// Hadamard quadrant.
pub fn example3(k: usize, t1: usize, t2: usize) -> Result<Generated> {
    constraint(k >= 1 && t1 >= 1 && t2 >= 1, "example3 requires k, t1, t2 >= 1")?;
    let s1 = 1usize << t1;
    let s2 = 1usize << t2;
    constraint(
        s1.min(s2) > k,
        format!("example3 requires min(s1, s2) >= k + 1, got s1={s1}, s2={s2}, k={k}"),
    )?;
    let (m, n) = (2 * s1, 2 * s2);
    let h = hadamard_of_order::<f64>(s1)?;
    let f = hadamard_of_order::<f64>(s2)?;
    // sqrt(mn / (s1 s2)) = 2 exactly for m = 2 s1, n = 2 s2.
    let coef = 2.0;
    let mut a = Matrix::zeros(m, n);
    for r in 0..m {
        for cidx in 0..n {
            let mut v = 0.0;
            for i in 0..k {
                let x = if r < s1 { 0.0 } else { h.get(r - s1, i) };
                let y = if cidx < s2 { 0.0 } else { f.get(cidx - s2, i) };
                v += coef * x * y;
            }
            let u = if r < s1 { 1.0 } else { h.get(r - s1, k) };
            let w = if cidx < s2 { 1.0 } else { f.get(cidx - s2, k) };
            a.set(r, cidx, v + u * w);
        }
    }
    let sidecar = Sidecar::new("example3")
        .param("k", k)
        .param("t1", t1)
        .param("t2", t2)
        .param("s1", s1)
        .param("s2", s2);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(k as f64 * ((m * n) as f64).sqrt()),
            known_selection: Some(Selection::new((s1..m).collect(), (s2..n).collect())),
            ..sidecar
        },
    })
}

/// A single unit entry in the leading corner traps greedy growth away from
/// the Hadamard block in the opposite corner.
pub fn example4(k: usize, c: usize, t: usize) -> Result<Generated> {
    constraint(k >= 1 && c >= 1 && t >= 1, "example4 requires k, c, t >= 1")?;
    let s1 = c * k;
    let s2 = 1usize << t;
    constraint(s2 >= k, format!("example4 requires s2 = 2^t >= k, got s2={s2}, k={k}"))?;
    let (m, n) = (2 * s1, 2 * s2);
    let h = hadamard_of_order::<f64>(s2)?;
    let mut a = Matrix::zeros(m, n);
    a.set(0, 0, 1.0);
    for w in 0..s1 {
        for l in 0..s2 {
            a.set(s1 + w, s2 + l, h.get(l, w / c));
        }
    }
    let sidecar = Sidecar::new("example4")
        .param("k", k)
        .param("c", c)
        .param("t", t)
        .param("s1", s1)
        .param("s2", s2);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(((k * s1 * s2) as f64).sqrt()),
            known_selection: Some(Selection::new((s1..m).collect(), (s2..n).collect())),
            ..sidecar
        },
    })
}

/// Principal analogue of example 1: a ones block ties a scaled identity
/// block in squared mass and loses a `sqrt(s)` factor in value.
pub fn example5(s: usize) -> Result<Generated> {
    constraint(s >= 1, "example5 requires s >= 1")?;
    let k = s;
    let n = 2 * s;
    let mut a = Matrix::zeros(n, n);
    for i in 0..s {
        for j in 0..s {
            a.set(i, j, 1.0);
        }
    }
    for i in 0..s {
        a.set(s + i, s + i, (s as f64).sqrt());
    }
    let sidecar = Sidecar::new("example5").param("k", k).param("s", s);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(s as f64 * (s as f64).sqrt()),
            known_selection: Some(Selection::principal((s..n).collect())),
            ..sidecar
        },
    })
}

/// Diagonal 0/1 matrix with one decoy unit ahead of an identity block; the
/// column scans only ever capture a single unit. Zero rows lead the layout
/// so zero-value ties select them.
pub fn example6(s: usize) -> Result<Generated> {
    constraint(s >= 2, "example6 requires s >= 2")?;
    let k = s;
    let n = 2 * s;
    let mut a = Matrix::zeros(n, n);
    for i in (s - 1)..n {
        a.set(i, i, 1.0);
    }
    let sidecar = Sidecar::new("example6").param("k", k).param("s", s);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(s as f64),
            known_selection: Some(Selection::principal(((s - 1)..(2 * s - 1)).collect())),
            ..sidecar
        },
    })
}

/// Principal analogue of example 3 with a fully degenerate top eigenspace.
pub fn example7(k: usize, t: usize) -> Result<Generated> {
    constraint(k >= 1 && t >= 1, "example7 requires k, t >= 1")?;
    let s = 1usize << t;
    constraint(s > k, format!("example7 requires s = 2^t >= k + 1, got s={s}, k={k}"))?;
    let n = 2 * s;
    let h = hadamard_of_order::<f64>(s)?;
    // n / s = 2 exactly.
    let coef = 2.0;
    let mut a = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let mut v = 0.0;
            for i in 0..k {
                let x = if r < s { 0.0 } else { h.get(r - s, i) };
                let y = if c < s { 0.0 } else { h.get(c - s, i) };
                v += coef * x * y;
            }
            let u = if r < s { 1.0 } else { h.get(r - s, k) };
            let w = if c < s { 1.0 } else { h.get(c - s, k) };
            a.set(r, c, v + u * w);
        }
    }
    let sidecar = Sidecar::new("example7").param("k", k).param("t", t).param("s", s);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some((k * n) as f64),
            known_selection: Some(Selection::principal((s..n).collect())),
            ..sidecar
        },
    })
}

/// Identity block versus a rank-one ones block with equal diagonals; the
/// diagonal-driven greedy start locks onto the identity side.
pub fn example8(s: usize, k: usize) -> Result<Generated> {
    constraint(s >= 1 && k >= 1 && k <= s, format!("example8 requires 1 <= k <= s, got k={k}, s={s}"))?;
    let n = 2 * s;
    let mut a = Matrix::zeros(n, n);
    for i in 0..s {
        a.set(i, i, 1.0);
    }
    for i in s..n {
        for j in s..n {
            a.set(i, j, 1.0);
        }
    }
    let sidecar = Sidecar::new("example8").param("k", k).param("s", s);
    Ok(Generated {
        matrix: a,
        sidecar: Sidecar {
            known_optimum: Some(s as f64),
            known_selection: Some(Selection::principal((s..n).collect())),
            ..sidecar
        },
    })
}

/// i.i.d. standard normal entries.
pub fn gaussian(m: usize, n: usize, seed: u64) -> Result<Generated> {
    constraint(m >= 1 && n >= 1, "gaussian requires positive dimensions")?;
    let mut rng = SplitMix64::new(seed);
    let entries: Vec<f64> = (0..m * n).map(|_| rng.normal()).collect();
    let matrix = Matrix::new(m, n, entries)?;
    let sidecar = Sidecar {
        seed: Some(seed),
        ..Sidecar::new("gaussian").param("m", m).param("n", n)
    };
    Ok(Generated { matrix, sidecar })
}

/// Gram matrix `X^T X` of an (n+2) x n gaussian factor; PSD by
/// construction.
pub fn psd_gram(n: usize, seed: u64) -> Result<Generated> {
    constraint(n >= 1, "psd-gram requires a positive dimension")?;
    let mut rng = SplitMix64::new(seed);
    let rows = n + 2;
    let x: Vec<Vec<f64>> = (0..rows).map(|_| (0..n).map(|_| rng.normal()).collect()).collect();
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = (0..rows).map(|r| x[r][i] * x[r][j]).sum();
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    let sidecar = Sidecar { seed: Some(seed), ..Sidecar::new("psd-gram").param("n", n) };
    Ok(Generated { matrix: a, sidecar })
}

pub fn hadamard_gen(t: usize) -> Result<Generated> {
    let matrix = hadamard::<f64>(t)?;
    Ok(Generated { matrix, sidecar: Sidecar::new("hadamard").param("t", t) })
}

/// Loose parameter bag filled from CLI flags.
#[derive(Debug, Clone, Default)]
pub struct GenParams {
    pub k: Option<usize>,
    pub c: Option<usize>,
    pub t: Option<usize>,
    pub t1: Option<usize>,
    pub t2: Option<usize>,
    pub s: Option<usize>,
    pub s2: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
}

fn need(p: Option<usize>, name: &str, kind: &str) -> Result<usize> {
    p.ok_or_else(|| Error::Invalid(format!("generator {kind} needs --{name}")))
}

pub fn generate(kind: &str, p: &GenParams) -> Result<Generated> {
    match kind {
        "example1" => example1(need(p.k, "k", kind)?, need(p.s2, "s2", kind)?),
        "example2" => example2(need(p.k, "k", kind)?, need(p.c, "c", kind)?, need(p.t, "t", kind)?),
        "example3" => {
            example3(need(p.k, "k", kind)?, need(p.t1, "t1", kind)?, need(p.t2, "t2", kind)?)
        }
        "example4" => example4(need(p.k, "k", kind)?, need(p.c, "c", kind)?, need(p.t, "t", kind)?),
        "example5" => example5(need(p.s, "s", kind)?),
        "example6" => example6(need(p.s, "s", kind)?),
        "example7" => example7(need(p.k, "k", kind)?, need(p.t, "t", kind)?),
        "example8" => example8(need(p.s, "s", kind)?, need(p.k, "k", kind)?),
        "gaussian" => gaussian(need(p.m, "m", kind)?, need(p.n, "n", kind)?, p.seed.unwrap_or(0)),
        "psd-gram" => psd_gram(need(p.n, "n", kind)?, p.seed.unwrap_or(0)),
        "hadamard" => hadamard_gen(need(p.t, "t", kind)?),
        other => Err(Error::Invalid(format!(
            "unknown generator {other:?}; expected example1..example8, gaussian, psd-gram or hadamard"
        ))),
    }
}
