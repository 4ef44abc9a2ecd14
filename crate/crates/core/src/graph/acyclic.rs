use serde::{Deserialize, Serialize};

use super::{strongly_connected_components, DiGraph};
use crate::error::{check_limit, Result};
use crate::limits::Limits;

/// Maximum acyclic induced subgraph: its size and the preferred witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mais {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// True iff the subgraph induced on `set` has no directed cycle.
pub fn is_acyclic_set(g: &DiGraph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.n() + 1];
    for &v in set {
        inside[v] = true;
    }
    // repeatedly peel vertices with no out-neighbor left inside
    let mut outdeg: Vec<usize> = (0..=g.n())
        .map(|v| {
            if v == 0 || !inside[v] {
                0
            } else {
                g.out_neighbors(v).iter().filter(|&&w| inside[w]).count()
            }
        })
        .collect();
    let preds: Vec<Vec<usize>> = {
        let mut p = vec![Vec::new(); g.n() + 1];
        for (u, v) in g.edges() {
            if inside[u] && inside[v] {
                p[v].push(u);
            }
        }
        p
    };
    let mut queue: Vec<usize> = set.iter().copied().filter(|&v| outdeg[v] == 0).collect();
    let mut peeled = 0;
    while let Some(v) = queue.pop() {
        peeled += 1;
        for &u in &preds[v] {
            outdeg[u] -= 1;
            if outdeg[u] == 0 {
                queue.push(u);
            }
        }
    }
    peeled == set.len()
}

/// Marks every acyclic subset of a small vertex set given by local
/// out-masks. A nonempty set is acyclic iff it has a sink whose removal
/// leaves an acyclic set.
pub(crate) fn acyclic_table(masks: &[u32]) -> Vec<bool> {
    let s = masks.len();
    let mut table = vec![false; 1usize << s];
    table[0] = true;
    for set in 1usize..(1 << s) {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if masks[v] as usize & set == 0 && table[set & !(1 << v)] {
                table[set] = true;
                break;
            }
        }
    }
    table
}

/// `a` is preferred over `b` when the smallest element of the symmetric
/// difference belongs to `a`. On equal-size sets this is lexicographic order.
pub(crate) fn preferred(a: usize, b: usize) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

/// Local out-masks of `g` restricted to `comp`, bit `k` for `comp[k]`.
pub(crate) fn local_masks(g: &DiGraph, comp: &[usize]) -> Vec<u32> {
    let mut pos = vec![usize::MAX; g.n() + 1];
    for (k, &v) in comp.iter().enumerate() {
        pos[v] = k;
    }
    comp.iter()
        .map(|&v| {
            g.out_neighbors(v)
                .iter()
                .filter(|&&w| pos[w] != usize::MAX)
                .fold(0u32, |m, &w| m | 1 << pos[w])
        })
        .collect()
}

pub fn mais(g: &DiGraph) -> Result<Mais> {
    mais_with_limit(g, Limits::default().mais_max_n)
}

/// Exact MAIS for graphs with at most `max_n` vertices.
///
/// Cycles never cross components, so each strongly connected component is
/// solved on its own and the witnesses are concatenated.
pub fn mais_with_limit(g: &DiGraph, max_n: usize) -> Result<Mais> {
    check_limit("mais", g.n(), max_n)?;
    let scc = strongly_connected_components(g);
    let mut witness = Vec::new();
    for comp in &scc.components {
        if comp.len() == 1 {
            witness.push(comp[0]);
            continue;
        }
        let table = acyclic_table(&local_masks(g, comp));
        let mut best = 0usize;
        for (set, &ok) in table.iter().enumerate() {
            if !ok {
                continue;
            }
            let (c, b) = (set.count_ones(), best.count_ones());
            if c > b || (c == b && preferred(set, best)) {
                best = set;
            }
        }
        witness.extend((0..comp.len()).filter(|k| best >> k & 1 == 1).map(|k| comp[k]));
    }
    witness.sort_unstable();
    Ok(Mais {
        size: witness.len(),
        witness,
    })
}
