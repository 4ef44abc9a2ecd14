use std::collections::HashMap;

use super::bits::Bits;
use super::AlphabetSpec;
use crate::error::{check_limit, Error, Result};
use crate::graph::DiGraph;
use crate::limits::Limits;

/// Undirected graph on message tuples; vertex `k` is the tuple of rank `k`.
#[derive(Clone, Debug)]
pub struct ConfusionGraph {
    spec: AlphabetSpec,
    base: DiGraph,
    rows: Vec<Bits>,
}

pub fn build_confusion_graph(base: &DiGraph, spec: &AlphabetSpec) -> Result<ConfusionGraph> {
    build_confusion_graph_with(base, spec, &Limits::default())
}

pub fn build_confusion_graph_with(
    base: &DiGraph,
    spec: &AlphabetSpec,
    limits: &Limits,
) -> Result<ConfusionGraph> {
    if spec.len() != base.n() {
        return Err(Error::DimensionMismatch(format!(
            "alphabet has {} sizes for {} vertices",
            spec.len(),
            base.n()
        )));
    }
    let total = spec.tuple_count();
    check_limit("confusion graph vertices", total, limits.max_confusion_vertices)?;
    let tuples: Vec<Vec<usize>> = spec.tuples().collect();
    let mut rows = vec![Bits::new(total); total];
    for i in base.vertices() {
        let side = base.out_neighbors(i);
        // Tuples with equal side information form a bucket; inside it,
        // every pair that differs at node i is confused.
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (k, w) in tuples.iter().enumerate() {
            let key = side.iter().map(|&j| w[j - 1]).collect();
            buckets.entry(key).or_default().push(k);
        }
        for members in buckets.values() {
            if members.len() < 2 {
                continue;
            }
            let all = Bits::from_indices(total, members.iter().copied());
            let mut by_value: HashMap<usize, Bits> = HashMap::new();
            for &k in members {
                by_value
                    .entry(tuples[k][i - 1])
                    .or_insert_with(|| Bits::new(total))
                    .set(k);
            }
            for &k in members {
                let mut nb = all.clone();
                nb.subtract(&by_value[&tuples[k][i - 1]]);
                rows[k].union_with(&nb);
            }
        }
    }
    Ok(ConfusionGraph {
        spec: spec.clone(),
        base: base.clone(),
        rows,
    })
}

impl ConfusionGraph {
    pub fn spec(&self) -> &AlphabetSpec {
        &self.spec
    }

    pub fn base(&self) -> &DiGraph {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bits::count).sum::<usize>() / 2
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a].get(b)
    }

    pub fn neighbors(&self, a: usize) -> &Bits {
        &self.rows[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.rows[a].count()
    }

    pub fn tuple(&self, k: usize) -> Vec<usize> {
        self.spec.unrank(k)
    }

    pub fn index(&self, w: &[usize]) -> Result<usize> {
        self.spec.check_tuple(w)?;
        Ok(self.spec.rank(w))
    }

    pub(crate) fn rows(&self) -> &[Bits] {
        &self.rows
    }

    /// True when no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(x, &a)| set[x + 1..].iter().all(|&b| !self.rows[a].get(b)))
    }

    /// Exports as a bidirectional digraph, vertex `k + 1` for rank `k`.
    pub fn to_digraph(&self) -> DiGraph {
        let mut g = DiGraph::new(self.rows.len());
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.ones() {
                g.add_edge(a + 1, b + 1).expect("rank in range and no self-loop");
            }
        }
        g
    }
}
