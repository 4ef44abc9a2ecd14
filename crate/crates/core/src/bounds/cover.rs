use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Result};
use crate::graph::DiGraph;
use crate::limits::Limits;
use crate::lp;
use crate::scalar::{serde_rational, Scalar};
use crate::Rational;

/// Bidirectional cliques with weights. Integral covers partition the
/// vertices and carry weight 1 on every part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub parts: Vec<Vec<usize>>,
    #[serde(with = "serde_rational::vec")]
    pub weights: Vec<Rational>,
}

impl CliqueCover {
    /// Total weight placed on cliques containing `v`.
    pub fn coverage(&self, v: usize) -> Rational {
        self.parts
            .iter()
            .zip(&self.weights)
            .filter(|(p, _)| p.contains(&v))
            .fold(Rational::from_integer(0.into()), |acc, (_, w)| acc + w)
    }
}

/// Fractional cover over an arbitrary scalar type.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalCover<T> {
    pub value: T,
    pub parts: Vec<Vec<usize>>,
    pub weights: Vec<T>,
}

/// Mutual-adjacency masks: bit `v - 1` of entry `u - 1` is set iff both
/// `(u, v)` and `(v, u)` are edges.
pub(crate) fn mutual_masks(g: &DiGraph) -> Vec<u64> {
    let out = g.out_masks();
    (0..g.n())
        .map(|u| {
            let mut m = 0u64;
            for v in 0..g.n() {
                if out[u] >> v & 1 == 1 && out[v] >> u & 1 == 1 {
                    m |= 1 << v;
                }
            }
            m
        })
        .collect()
}

pub fn is_bidirectional_clique(g: &DiGraph, set: &[usize]) -> bool {
    set.iter()
        .all(|&u| set.iter().all(|&v| u == v || (g.has_edge(u, v) && g.has_edge(v, u))))
}

fn mask_to_set(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// All maximal bidirectional cliques, each sorted, listed in lexicographic order.
pub fn maximal_cliques(g: &DiGraph) -> Vec<Vec<usize>> {
    let adj = mutual_masks(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut found = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut found);
    let mut cliques: Vec<Vec<usize>> = found.into_iter().map(mask_to_set).collect();
    cliques.sort();
    cliques
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Minimum number of bidirectional cliques partitioning the vertices.
pub fn clique_cover_number(g: &DiGraph) -> Result<(usize, CliqueCover)> {
    check_limit("clique cover", g.n(), Limits::default().cover_max_n)?;
    let adj = mutual_masks(g);
    let n = g.n();
    let mut best: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    let mut parts = Vec::new();
    assign(&adj, 0, n, &mut parts, &mut best);
    let parts: Vec<Vec<usize>> = best.into_iter().map(mask_to_set).collect();
    let weights = vec![Rational::one(); parts.len()];
    Ok((parts.len(), CliqueCover { parts, weights }))
}

fn assign(adj: &[u64], v: usize, n: usize, parts: &mut Vec<u64>, best: &mut Vec<u64>) {
    if parts.len() >= best.len() {
        return;
    }
    if v == n {
        *best = parts.clone();
        return;
    }
    for i in 0..parts.len() {
        if parts[i] & !adj[v] == 0 {
            parts[i] |= 1 << v;
            assign(adj, v + 1, n, parts, best);
            parts[i] &= !(1 << v);
        }
    }
    parts.push(1 << v);
    assign(adj, v + 1, n, parts, best);
    parts.pop();
}

pub fn fractional_clique_cover(g: &DiGraph) -> Result<(Rational, CliqueCover)> {
    let cover = fractional_clique_cover_with::<Rational>(g)?;
    Ok((
        cover.value,
        CliqueCover {
            parts: cover.parts,
            weights: cover.weights,
        },
    ))
}

/// Covering LP over the maximal cliques, solved through its packing dual
/// `max sum y_v  s.t.  sum_{v in C} y_v <= 1`. Cover weights are the
/// optimal dual multipliers of the packing constraints.
pub fn fractional_clique_cover_with<T: Scalar>(g: &DiGraph) -> Result<FractionalCover<T>> {
    check_limit("fractional clique cover", g.n(), Limits::default().cover_max_n)?;
    if g.n() == 0 {
        return Ok(FractionalCover {
            value: T::zero(),
            parts: Vec::new(),
            weights: Vec::new(),
        });
    }
    let cliques = maximal_cliques(g);
    let a: Vec<Vec<T>> = cliques
        .iter()
        .map(|c| {
            (1..=g.n())
                .map(|v| if c.contains(&v) { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let b = vec![T::one(); cliques.len()];
    let c = vec![T::one(); g.n()];
    let sol = lp::maximize(&a, &b, &c)?;
    let mut parts = Vec::new();
    let mut weights = Vec::new();
    for (clique, w) in cliques.into_iter().zip(sol.duals) {
        if w.is_strictly_positive() {
            parts.push(clique);
            weights.push(w);
        }
    }
    Ok(FractionalCover {
        value: sol.value,
        parts,
        weights,
    })
}

/// Partition of the vertices into directed cycles and singletons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCover {
    /// `n` minus the number of cycles.
    pub value: usize,
    /// Each cycle lists its vertices in traversal order, starting at its smallest vertex.
    pub cycles: Vec<Vec<usize>>,
}

/// Cost of the best cover by vertex-disjoint directed cycles: a cycle of
/// length `l` costs `l - 1` transmissions, an uncovered vertex costs one.
pub fn cycle_cover_bound(g: &DiGraph) -> Result<CycleCover> {
    let n = g.n();
    check_limit("cycle cover", n, Limits::default().cover_max_n)?;
    let out = g.out_masks();
    let full = (1usize << n) - 1;

    // path[s] bit v: a simple path from the lowest vertex of s through all of s ends at v
    let mut path = vec![0u64; 1 << n];
    for v in 0..n {
        path[1 << v] = 1 << v;
    }
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        let mut ends = path[s];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = out[v] as usize & !s & !((1 << low) - 1);
            next &= !(1 << low);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                path[s | 1 << w] |= 1 << w;
            }
        }
    }
    let closes = |s: usize| -> bool {
        let low = s.trailing_zeros() as usize;
        s.count_ones() >= 2 && (0..n).any(|v| path[s] >> v & 1 == 1 && out[v] >> low & 1 == 1)
    };

    // most disjoint cycles inside each subset
    let mut best = vec![0usize; 1 << n];
    let mut choice = vec![0usize; 1 << n];
    for s in 1..=full {
        let low = 1usize << s.trailing_zeros();
        best[s] = best[s & !low];
        choice[s] = 0;
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let t = sub | low;
            if t != low && closes(t) && 1 + best[s & !t] > best[s] {
                best[s] = 1 + best[s & !t];
                choice[s] = t;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    let mut cycles = Vec::new();
    let mut s = full;
    while s != 0 {
        let t = choice[s];
        if t == 0 {
            s &= s - 1;
            continue;
        }
        cycles.push(trace_cycle(t, &path, &out));
        s &= !t;
    }
    cycles.sort();
    Ok(CycleCover {
        value: n - cycles.len(),
        cycles,
    })
}

fn trace_cycle(t: usize, path: &[u64], out: &[u64]) -> Vec<usize> {
    let low = t.trailing_zeros() as usize;
    let mut end = (0..64)
        .find(|&v| path[t] >> v & 1 == 1 && out[v] >> low & 1 == 1)
        .expect("closing vertex");
    let mut s = t;
    let mut rev = Vec::new();
    while s != 1 << low {
        rev.push(end + 1);
        let prev_set = s & !(1 << end);
        end = (0..64)
            .find(|&u| path[prev_set] >> u & 1 == 1 && out[u] >> end & 1 == 1)
            .expect("predecessor on path");
        s = prev_set;
    }
    rev.push(low + 1);
    rev.reverse();
    rev
}
