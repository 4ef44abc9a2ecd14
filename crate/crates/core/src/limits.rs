use serde::{Deserialize, Serialize};

/// Size guards for the exhaustive engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Vertex count up to which MAIS and rate checks run.
    pub mais_max_n: usize,
    /// Vertex count for permutation-based isomorphism.
    pub iso_max_n: usize,
    /// Vertex count for clique covers, the covering LP and cycle covers.
    pub cover_max_n: usize,
    /// Vertex count for the GF(2) minrank search.
    pub minrank_max_n: usize,
    /// Largest message-tuple space accepted by an [`AlphabetSpec`](crate::AlphabetSpec).
    pub max_tuples: usize,
    /// Largest confusion graph that is materialized as bit rows.
    pub max_confusion_vertices: usize,
    /// Largest block handed to the exact colorer.
    pub exact_coloring_block: usize,
    /// Largest graph for the exact independent-set search.
    pub mis_max_vertices: usize,
    /// Search-node budget for one exact coloring run.
    pub coloring_budget: u64,
    /// Tabu-search iterations per target color count.
    pub tabu_iterations: u64,
    /// Search-node budget for one minrank run.
    pub minrank_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mais_max_n: 20,
            iso_max_n: 8,
            cover_max_n: 10,
            minrank_max_n: 10,
            max_tuples: 1 << 20,
            max_confusion_vertices: 1 << 14,
            exact_coloring_block: 256,
            mis_max_vertices: 1 << 16,
            coloring_budget: 5_000_000,
            tabu_iterations: 200_000,
            minrank_budget: 200_000_000,
        }
    }
}
