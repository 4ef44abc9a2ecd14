//! Directed side-information graphs.
//!
//! Vertices are labeled `1..=n`. An edge `(u, v)` means receiver `u` already
//! holds message `v`.

pub(crate) mod acyclic;
mod iso;
mod scc;
pub(crate) mod text;
mod turan;

pub use acyclic::{is_acyclic_set, mais, mais_with_limit, Mais};
pub use iso::{find_isomorphism, find_isomorphism_with_limit, is_isomorphic, is_isomorphic_with_limit};
pub use scc::{is_uscs, prune_to_uscs, strongly_connected_components, SccPartition};
pub use text::{parse_graph, parse_graph_any, write_graph};
pub use turan::{minimal_equal_rate_graph, turan_edge_count, turan_graph, MinimalRateGraph, TuranSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiGraph {
    n: usize,
    // sorted out-neighbors of vertex v at index v - 1
    out: Vec<Vec<usize>>,
}

impl DiGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        DiGraph {
            n,
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DiGraph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(g)
    }

    /// Builds a graph where every listed pair is present in both directions.
    pub fn bidirectional<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DiGraph::new(n);
        for (u, v) in pairs {
            g.add_edge(u, v)?;
            g.add_edge(v, u)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = DiGraph::new(n);
        for u in 1..=n {
            g.out[u - 1] = (1..=n).filter(|&v| v != u).collect();
        }
        g
    }

    /// Directed cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn directed_cycle(n: usize) -> Self {
        let mut g = DiGraph::new(n);
        if n >= 2 {
            for u in 1..=n {
                let v = u % n + 1;
                g.add_edge(u, v).expect("cycle edges are valid");
            }
        }
        g
    }

    /// Bidirectional cycle on `1..=n` (needs `n >= 3`; smaller `n` gives a clique).
    pub fn bidirectional_cycle(n: usize) -> Self {
        let mut g = DiGraph::new(n);
        if n >= 2 {
            for u in 1..=n {
                let v = u % n + 1;
                if u != v {
                    g.add_edge(u, v).expect("valid");
                    g.add_edge(v, u).expect("valid");
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Inserts `(u, v)`; returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let row = &mut self.out[u - 1];
        match row.binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                row.insert(pos, v);
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u == 0 || u > self.n {
            return false;
        }
        let row = &mut self.out[u - 1];
        match row.binary_search(&v) {
            Ok(pos) => {
                row.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Copy of the graph with `(u, v)` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        if !g.remove_edge(u, v) {
            return Err(Error::NoSuchEdge(u, v));
        }
        Ok(g)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.out[u - 1].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v - 1]
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&v| (i + 1, v)))
            .collect()
    }

    pub fn is_bidirectional(&self) -> bool {
        self.first_one_way_edge().is_none()
    }

    pub(crate) fn first_one_way_edge(&self) -> Option<(usize, usize)> {
        self.edges().into_iter().find(|&(u, v)| !self.has_edge(v, u))
    }

    pub(crate) fn require_bidirectional(&self) -> Result<()> {
        match self.first_one_way_edge() {
            Some((u, v)) => Err(Error::NotBidirectional(u, v)),
            None => Ok(()),
        }
    }

    /// Out-neighborhoods as bitmasks, bit `v - 1` for vertex `v`. Needs `n <= 64`.
    pub(crate) fn out_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.out
            .iter()
            .map(|row| row.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect()
    }

    /// Subgraph induced on `vertices`, relabeled `1..` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut pos = vec![0usize; self.n + 1];
        for (k, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if pos[v] != 0 {
                return Err(Error::InvalidParams(format!("vertex {v} listed twice")));
            }
            pos[v] = k + 1;
        }
        let mut g = DiGraph::new(vertices.len());
        for (k, &v) in vertices.iter().enumerate() {
            for &w in self.out_neighbors(v) {
                if pos[w] != 0 {
                    g.add_edge(k + 1, pos[w])?;
                }
            }
        }
        Ok(g)
    }

    /// Applies `map[v - 1]` as the new label of vertex `v`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        check_permutation(map, self.n)?;
        DiGraph::from_edges(self.n, self.edges().into_iter().map(|(u, v)| (map[u - 1], map[v - 1])))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidParams(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &v in perm {
        if v == 0 || v > n || seen[v] {
            return Err(Error::InvalidParams(format!("not a permutation of 1..={n}")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Splits the edges by a vertex order: forward edges go from an earlier to a
/// later vertex, backward edges the other way.
pub fn forward_backward_split(g: &DiGraph, order: &[usize]) -> Result<(DiGraph, DiGraph)> {
    check_permutation(order, g.n())?;
    let mut pos = vec![0usize; g.n() + 1];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut forward = DiGraph::new(g.n());
    let mut backward = DiGraph::new(g.n());
    for (u, v) in g.edges() {
        if pos[u] < pos[v] {
            forward.add_edge(u, v)?;
        } else {
            backward.add_edge(u, v)?;
        }
    }
    Ok((forward, backward))
}

/// Disjoint union; `h`'s vertices become `g.n() + 1 ..= g.n() + h.n()`.
pub fn disjoint_union(g: &DiGraph, h: &DiGraph) -> DiGraph {
    let shift = g.n();
    let mut out = g.out.clone();
    out.extend(
        h.out
            .iter()
            .map(|row| row.iter().map(|&v| v + shift).collect::<Vec<_>>()),
    );
    DiGraph {
        n: g.n() + h.n(),
        out,
    }
}

/// JSON mirror of the graph text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&DiGraph> for GraphJson {
    fn from(g: &DiGraph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for DiGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        DiGraph::from_edges(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for DiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        DiGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}
