use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DiGraph;
use crate::error::{Error, Result};
use crate::scalar::{floor_usize, format_rational};

/// Shape of the Turán graph `T(m, k)`: `m = a*k + b` with `0 <= b < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranSpec {
    pub m: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
}

impl TuranSpec {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if k < 1 || k > m {
            return Err(Error::InvalidParams(format!(
                "Turán graph needs 1 <= k <= m, got m={m}, k={k}"
            )));
        }
        Ok(TuranSpec {
            m,
            k,
            a: m / k,
            b: m % k,
        })
    }

    /// Part sizes, the `b` larger parts first.
    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.a + 1; self.b];
        sizes.extend(std::iter::repeat(self.a).take(self.k - self.b));
        sizes
    }

    /// Parts as consecutive vertex ranges.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut next = 1;
        self.part_sizes()
            .into_iter()
            .map(|s| {
                let part: Vec<usize> = (next..next + s).collect();
                next += s;
                part
            })
            .collect()
    }

    /// `e(m, k) = ((k-1) m^2 - b (k-b)) / (2k)`.
    pub fn edge_count(&self) -> usize {
        let (m, k, b) = (self.m, self.k, self.b);
        ((k - 1) * m * m - b * (k - b)) / (2 * k)
    }
}

pub fn turan_edge_count(m: usize, k: usize) -> Result<usize> {
    Ok(TuranSpec::new(m, k)?.edge_count())
}

/// `T(m, k)` with each undirected edge stored in both directions, so the
/// directed edge count is `2 e(m, k)`.
pub fn turan_graph(m: usize, k: usize) -> Result<DiGraph> {
    let spec = TuranSpec::new(m, k)?;
    let parts = spec.parts();
    let mut part_of = vec![0; m + 1];
    for (p, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = p;
        }
    }
    let mut g = DiGraph::new(m);
    for u in 1..=m {
        for v in 1..=m {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Sparsest graph supporting an equal rate `r` on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalRateGraph {
    pub graph: DiGraph,
    pub edge_count: usize,
    /// Vertex sets of the bidirectional cliques, in label order.
    pub cliques: Vec<Vec<usize>>,
    /// Set when `r < 1/m`: the edgeless graph already suffices.
    pub below_threshold: bool,
}

/// Complement of `T(m, floor(1/r))`: disjoint bidirectional cliques.
pub fn minimal_equal_rate_graph(r: &BigRational, m: usize) -> Result<MinimalRateGraph> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be at least 1".into()));
    }
    if r > &BigRational::one() {
        return Err(Error::RateTooHigh(format_rational(r)));
    }
    if r <= &BigRational::zero() {
        return Err(Error::InvalidParams(format!(
            "rate must be positive, got {}",
            format_rational(r)
        )));
    }
    let inv = r.recip();
    let k = floor_usize(&inv).unwrap_or(usize::MAX);
    if k > m {
        return Ok(MinimalRateGraph {
            graph: DiGraph::new(m),
            edge_count: 0,
            cliques: (1..=m).map(|v| vec![v]).collect(),
            below_threshold: true,
        });
    }
    let spec = TuranSpec::new(m, k)?;
    let cliques = spec.parts();
    let mut graph = DiGraph::new(m);
    for clique in &cliques {
        for &u in clique {
            for &v in clique {
                if u != v {
                    graph.add_edge(u, v)?;
                }
            }
        }
    }
    let edge_count = graph.edge_count();
    debug_assert_eq!(edge_count, m * (m - 1) - 2 * spec.edge_count());
    Ok(MinimalRateGraph {
        graph,
        edge_count,
        cliques,
        below_threshold: false,
    })
}
