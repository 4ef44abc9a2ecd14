use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::DiGraph;

/// Strongly connected components in a topological order of the condensation.
///
/// Every edge between two different components points from an earlier
/// component to a later one. Among components that are free at the same
/// step, the one holding the smallest vertex comes first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccPartition {
    pub components: Vec<Vec<usize>>,
    #[serde(skip)]
    comp_of: Vec<usize>,
}

impl SccPartition {
    /// Index into `components` for vertex `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.comp_of[v - 1]
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.component_of(u) == self.component_of(v)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components with more than one vertex.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.components.iter().filter(|c| c.len() > 1)
    }
}

// Iterative Tarjan; returns a component id per vertex (0-based vertices).
fn tarjan(g: &DiGraph) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut ncomp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut frames = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let adj = g.out_neighbors(v + 1);
            if *pos < adj.len() {
                let w = adj[*pos] - 1;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (comp, ncomp)
}

pub fn strongly_connected_components(g: &DiGraph) -> SccPartition {
    let n = g.n();
    let (raw, ncomp) = tarjan(g);

    let mut members = vec![Vec::new(); ncomp];
    for v in 0..n {
        members[raw[v]].push(v + 1);
    }
    let mut succ = vec![Vec::new(); ncomp];
    let mut indeg = vec![0usize; ncomp];
    for (u, v) in g.edges() {
        let (a, b) = (raw[u - 1], raw[v - 1]);
        if a != b {
            succ[a].push(b);
        }
    }
    for s in &mut succ {
        s.sort_unstable();
        s.dedup();
        for &b in s.iter() {
            indeg[b] += 1;
        }
    }

    // Kahn's algorithm keyed by smallest member vertex.
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..ncomp)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((members[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(ncomp);
    while let Some(Reverse((_, c))) = heap.pop() {
        order.push(c);
        for &b in &succ[c] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                heap.push(Reverse((members[b][0], b)));
            }
        }
    }

    let mut rank = vec![0usize; ncomp];
    for (pos, &c) in order.iter().enumerate() {
        rank[c] = pos;
    }
    let comp_of = raw.iter().map(|&c| rank[c]).collect();
    let components = order.into_iter().map(|c| std::mem::take(&mut members[c])).collect();
    SccPartition { components, comp_of }
}

/// True iff every edge stays inside one strongly connected component.
pub fn is_uscs(g: &DiGraph) -> bool {
    let scc = strongly_connected_components(g);
    g.edges().into_iter().all(|(u, v)| scc.same_component(u, v))
}

/// Drops every edge whose endpoints lie in different components.
///
/// Returns the pruned graph and the removed edges in lexicographic order.
pub fn prune_to_uscs(g: &DiGraph) -> (DiGraph, Vec<(usize, usize)>) {
    let scc = strongly_connected_components(g);
    let mut kept = DiGraph::new(g.n());
    let mut removed = Vec::new();
    for (u, v) in g.edges() {
        if scc.same_component(u, v) {
            kept.add_edge(u, v).expect("edge of a valid graph");
        } else {
            removed.push((u, v));
        }
    }
    (kept, removed)
}
