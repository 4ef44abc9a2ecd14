//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use indexcoding::DiGraph;
use rand::Rng;

/// All tuples in rank order, node 1 most significant.
pub fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..s).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Straight from the definition: some node differs and sees no difference.
pub fn confusable(g: &DiGraph, a: &[usize], b: &[usize]) -> bool {
    (1..=g.n()).any(|i| {
        a[i - 1] != b[i - 1] && (1..=g.n()).all(|j| !g.has_edge(i, j) || a[j - 1] == b[j - 1])
    })
}

/// Dense adjacency of the confusion graph.
pub fn confusion_matrix(g: &DiGraph, sizes: &[usize]) -> Vec<Vec<bool>> {
    let t = tuples(sizes);
    t.iter()
        .map(|a| t.iter().map(|b| confusable(g, a, b)).collect())
        .collect()
}

/// Independence number by plain recursion over include/exclude.
pub fn independence_number(adj: &[Vec<bool>]) -> usize {
    fn go(adj: &[Vec<bool>], cand: Vec<usize>) -> usize {
        let Some((&v, rest)) = cand.split_first() else {
            return 0;
        };
        let without = go(adj, rest.to_vec());
        let with = 1 + go(adj, rest.iter().copied().filter(|&u| !adj[v][u]).collect());
        with.max(without)
    }
    go(adj, (0..adj.len()).collect())
}

/// Chromatic number by branching over maximal independent sets that
/// contain the smallest remaining vertex, pruned by `|rest| <= k * alpha`.
pub fn chromatic_number(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let alpha = independence_number(adj).max(1);
    let mut k = n.div_ceil(alpha);
    while !colorable(adj, &(0..n).collect::<Vec<_>>(), k, alpha) {
        k += 1;
    }
    k
}

fn colorable(adj: &[Vec<bool>], rest: &[usize], k: usize, alpha: usize) -> bool {
    let Some(&v) = rest.first() else {
        return true;
    };
    if rest.len() > k * alpha {
        return false;
    }
    let mut found = false;
    maximal_sets(adj, rest, vec![v], rest[1..].iter().copied().filter(|&u| !adj[v][u]).collect(), &mut |set| {
        if !found {
            let left: Vec<usize> = rest.iter().copied().filter(|x| !set.contains(x)).collect();
            found = colorable(adj, &left, k - 1, alpha);
        }
    });
    found
}

/// Enumerates independent sets containing `cur` that are maximal within `rest`.
fn maximal_sets(
    adj: &[Vec<bool>],
    rest: &[usize],
    cur: Vec<usize>,
    cand: Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    match cand.split_first() {
        None => {
            let maximal = rest
                .iter()
                .all(|&u| cur.contains(&u) || cur.iter().any(|&c| adj[c][u]));
            if maximal {
                f(&cur);
            }
        }
        Some((&u, tail)) => {
            let mut with = cur.clone();
            with.push(u);
            let next: Vec<usize> = tail.iter().copied().filter(|&x| !adj[u][x]).collect();
            maximal_sets(adj, rest, with, next, f);
            maximal_sets(adj, rest, cur, tail.to_vec(), f);
        }
    }
}

pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> DiGraph {
    let mut g = DiGraph::new(n);
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Every undirected simple graph on `n` vertices as a bidirectional digraph.
pub fn all_bidirectional(n: usize) -> Vec<DiGraph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p);
            DiGraph::bidirectional(n, chosen).unwrap()
        })
        .collect()
}

/// Decodability straight from the definition, by brute force over all
/// message vectors: no two vectors with equal codeword and equal side
/// information may differ at a node's own coordinates.
pub fn linear_code_valid(g: &DiGraph, code: &indexcoding::linear::LinearIndexCode) -> bool {
    let q = code.field().q() as usize;
    let w = code.width();
    let sizes = vec![q; w];
    let all = tuples(&sizes);
    let owner: Vec<usize> = (0..w).map(|c| code.column_owner(c).0).collect();
    let encode = |x: &[usize]| -> Vec<u32> {
        let v: Vec<u32> = x.iter().map(|&a| a as u32).collect();
        code.encode(&v)
    };
    for i in 1..=g.n() {
        let mut seen = std::collections::HashMap::new();
        for x in &all {
            let side: Vec<usize> = (0..w)
                .filter(|&c| g.has_edge(i, owner[c]))
                .map(|c| x[c])
                .collect();
            let own: Vec<usize> = (0..w).filter(|&c| owner[c] == i).map(|c| x[c]).collect();
            let key = (encode(x), side);
            if let Some(prev) = seen.insert(key, own.clone()) {
                if prev != own {
                    return false;
                }
            }
        }
    }
    true
}

/// A valid code on `g`: random row sets are tried first, then a random
/// invertible mix of the uncoded identity.
pub fn random_valid_code(
    rng: &mut impl Rng,
    g: &DiGraph,
    field: indexcoding::linear::PrimeField,
    dims: Vec<usize>,
) -> indexcoding::linear::LinearIndexCode {
    use indexcoding::linear::{is_valid_linear_code, LinearIndexCode};
    let q = field.q();
    let width: usize = dims.iter().sum();
    for _ in 0..30 {
        let len = rng.gen_range(0..=width);
        let rows: Vec<Vec<u32>> = (0..len)
            .map(|_| (0..width).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let code = LinearIndexCode::new(field, dims.clone(), rows).unwrap();
        if is_valid_linear_code(g, &code).unwrap().valid {
            return code;
        }
    }
    // lower unitriangular times upper unitriangular is invertible
    let tri = |rng: &mut dyn rand::RngCore, lower: bool| -> Vec<Vec<u32>> {
        (0..width)
            .map(|r| {
                (0..width)
                    .map(|c| match (r == c, (c < r) == lower) {
                        (true, _) => 1,
                        (false, true) => rng.gen_range(0..q),
                        (false, false) => 0,
                    })
                    .collect()
            })
            .collect()
    };
    let l = tri(rng, true);
    let u = tri(rng, false);
    let rows = indexcoding::linear::matrix::multiply(field, &l, &u, width);
    LinearIndexCode::new(field, dims, rows).unwrap()
}
