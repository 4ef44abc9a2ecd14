//! Explicit encoders: clique XOR, the cycle-with-apex family and its
//! blow-up, and the concatenation code on the three-node example.

use serde::{Deserialize, Serialize};

use super::code::LinearIndexCode;
use super::field::GF2;
use crate::bounds::is_bidirectional_clique;
use crate::error::{Error, Result};
use crate::graph::DiGraph;

/// One XOR row per clique of a partition into bidirectional cliques.
pub fn clique_xor_code(g: &DiGraph, parts: &[Vec<usize>]) -> Result<LinearIndexCode> {
    let mut seen = vec![false; g.n() + 1];
    for p in parts {
        for &v in p {
            if v == 0 || v > g.n() {
                return Err(Error::NotACliquePartition(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::NotACliquePartition(format!("vertex {v} in two parts")));
            }
            seen[v] = true;
        }
        if p.is_empty() {
            return Err(Error::NotACliquePartition("empty part".into()));
        }
        if !is_bidirectional_clique(g, p) {
            return Err(Error::NotACliquePartition(format!("{p:?} is not a bidirectional clique")));
        }
    }
    if let Some(v) = (1..=g.n()).find(|&v| !seen[v]) {
        return Err(Error::NotACliquePartition(format!("vertex {v} not covered")));
    }
    let rows = parts
        .iter()
        .map(|p| (1..=g.n()).map(|v| u32::from(p.contains(&v))).collect())
        .collect();
    LinearIndexCode::new(GF2, vec![1; g.n()], rows)
}

/// Parameters of the directed `m`-cycle with apex `m + 1`; the apex knows
/// `W_1` and `W_i` and is known by `j` and `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexParams {
    pub m: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ApexParams {
    pub fn new(m: usize, i: usize, j: usize, k: usize) -> Result<Self> {
        if !(m >= 2 && 1 <= j && j < i && i <= k && k <= m) {
            return Err(Error::InvalidParams(format!(
                "need 1 <= j < i <= k <= m with m >= 2, got m={m} i={i} j={j} k={k}"
            )));
        }
        Ok(ApexParams { m, i, j, k })
    }

    /// Every valid parameter tuple for a given cycle length.
    pub fn all(m: usize) -> Vec<ApexParams> {
        let mut out = Vec::new();
        for i in 2..=m {
            for j in 1..i {
                for k in i..=m {
                    out.push(ApexParams { m, i, j, k });
                }
            }
        }
        out
    }

    pub fn apex(&self) -> usize {
        self.m + 1
    }

    pub fn base_edges(&self) -> Vec<(usize, usize)> {
        let (m, a) = (self.m, self.apex());
        let mut edges: Vec<(usize, usize)> = (1..=m).map(|u| (u, u % m + 1)).collect();
        edges.extend([(a, 1), (a, self.i), (self.j, a), (self.k, a)]);
        edges.sort_unstable();
        edges
    }

    pub fn graph(&self) -> DiGraph {
        DiGraph::from_edges(self.apex(), self.base_edges()).expect("parameters validated")
    }

    /// Supports of `f_1..f_m`: `f_l = W_l + W_{l+1}`, indices mod `m`, plus
    /// the apex symbol when `l` is `j` or `k`.
    fn f_supports(&self) -> Vec<Vec<usize>> {
        (1..=self.m)
            .map(|l| {
                let mut s = vec![l, l % self.m + 1];
                if l == self.j || l == self.k {
                    s.push(self.apex());
                }
                s
            })
            .collect()
    }
}

/// The cycle-with-apex graph and its code `(f_2, ..., f_m)`; `f_1` is the
/// sum of the others and is not sent.
pub fn cycle_apex_code(m: usize, i: usize, j: usize, k: usize) -> Result<(DiGraph, LinearIndexCode)> {
    let p = ApexParams::new(m, i, j, k)?;
    let n = p.apex();
    let rows = p.f_supports()[1..]
        .iter()
        .map(|s| {
            let mut row = vec![0u32; n];
            for &v in s {
                row[v - 1] ^= 1;
            }
            row
        })
        .collect();
    Ok((p.graph(), LinearIndexCode::new(GF2, vec![1; n], rows)?))
}

/// The apex graph with vertex `u` replaced by a bidirectional clique of
/// `sizes[u-1]` copies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUp {
    pub params: ApexParams,
    pub sizes: Vec<usize>,
    pub graph: DiGraph,
    pub code: LinearIndexCode,
    /// `labels[v-1] = (u, t)`: vertex `v` is copy `t` of base vertex `u`.
    pub labels: Vec<(usize, usize)>,
}

impl BlowUp {
    /// Vertex number of copy `t` of base vertex `u`.
    pub fn vertex(&self, u: usize, t: usize) -> usize {
        self.sizes[..u - 1].iter().sum::<usize>() + t
    }
}

pub fn blowup_code(params: ApexParams, sizes: &[usize]) -> Result<BlowUp> {
    let params = ApexParams::new(params.m, params.i, params.j, params.k)?;
    let base_n = params.apex();
    if sizes.len() != base_n || sizes.contains(&0) {
        return Err(Error::InvalidParams(format!(
            "need {base_n} clique sizes, all at least 1"
        )));
    }
    let labels: Vec<(usize, usize)> = sizes
        .iter()
        .enumerate()
        .flat_map(|(u, &s)| (1..=s).map(move |t| (u + 1, t)))
        .collect();
    let n = labels.len();
    let copies = |u: usize| -> Vec<usize> {
        (1..=n).filter(|&v| labels[v - 1].0 == u).collect()
    };

    let mut g = DiGraph::new(n);
    for u in 1..=base_n {
        let c = copies(u);
        for &a in &c {
            for &b in &c {
                if a != b {
                    g.add_edge(a, b)?;
                }
            }
        }
    }
    for (u, v) in params.base_edges() {
        for &a in &copies(u) {
            for &b in &copies(v) {
                g.add_edge(a, b)?;
            }
        }
    }

    let rows = params.f_supports()[1..]
        .iter()
        .map(|s| {
            let mut row = vec![0u32; n];
            for &u in s {
                for v in copies(u) {
                    row[v - 1] ^= 1;
                }
            }
            row
        })
        .collect();
    let code = LinearIndexCode::new(GF2, vec![1; n], rows)?;
    Ok(BlowUp {
        params,
        sizes: sizes.to_vec(),
        graph: g,
        code,
        labels,
    })
}

/// The three-node graph with edges (1,2), (1,3), (2,1), (3,1), with
/// `W_1` of two bits and the code `t = W_1 + (W_2 || W_3)`.
pub fn conjecture1_code() -> (DiGraph, LinearIndexCode) {
    let g = DiGraph::from_edges(3, [(1, 2), (1, 3), (2, 1), (3, 1)]).expect("fixed edges");
    let rows = vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
    (g, LinearIndexCode::new(GF2, vec![2, 1, 1], rows).expect("fixed code"))
}
