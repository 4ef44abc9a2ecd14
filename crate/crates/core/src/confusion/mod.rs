//! Zero-error one-shot analysis through confusion graphs.
//!
//! Two message tuples are confusable when some node sees different demands
//! but identical side information; a one-shot code is exactly a proper
//! coloring of the resulting graph.

mod bits;
mod coloring;
mod graph;
mod table;

pub use bits::Bits;
pub use coloring::{
    chromatic_bounds, chromatic_number, max_clique, max_distinguishable_family,
    max_independent_set, min_oneshot_bounds, min_oneshot_size, BlockBound, ColoringBounds,
    Distinguishable,
};
pub use graph::{build_confusion_graph, build_confusion_graph_with, ConfusionGraph};
pub use table::{
    apex_coset_code, find_apex_coset_code, c5_with_apex, fig5_mask_code, parse_table, parse_table_any, verify_code, write_table,
    CodeCheck, CodeTable, Violation, C5_MASKS,
};

use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};
use crate::graph::DiGraph;
use crate::limits::Limits;

/// Per-node message alphabet sizes `|W_i|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AlphabetSpec {
    sizes: Vec<usize>,
    tuples: usize,
}

impl AlphabetSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        Self::with_limit(sizes, Limits::default().max_tuples)
    }

    pub fn with_limit(sizes: Vec<usize>, max_tuples: usize) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidParams("alphabet sizes must be at least 1".into()));
        }
        let tuples = sizes
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s))
            .unwrap_or(usize::MAX);
        check_limit("tuple space", tuples, max_tuples)?;
        Ok(AlphabetSpec { sizes, tuples })
    }

    pub fn binary(n: usize) -> Self {
        AlphabetSpec::new(vec![2; n]).expect("binary tuple space within default limit")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples
    }

    /// Mixed-radix rank, node 1 most significant.
    pub fn rank(&self, w: &[usize]) -> usize {
        w.iter().zip(&self.sizes).fold(0, |acc, (&x, &s)| acc * s + x)
    }

    pub fn unrank(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.sizes.len()];
        for (slot, &s) in w.iter_mut().zip(&self.sizes).rev() {
            *slot = idx % s;
            idx /= s;
        }
        w
    }

    pub fn check_tuple(&self, w: &[usize]) -> Result<()> {
        if w.len() != self.sizes.len() {
            return Err(Error::DimensionMismatch(format!(
                "tuple has {} entries, expected {}",
                w.len(),
                self.sizes.len()
            )));
        }
        if let Some(i) = (0..w.len()).find(|&i| w[i] >= self.sizes[i]) {
            return Err(Error::DimensionMismatch(format!(
                "entry {} of tuple is {} but |W_{}| = {}",
                i + 1,
                w[i],
                i + 1,
                self.sizes[i]
            )));
        }
        Ok(())
    }

    /// Iterates all tuples in rank order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.tuples).map(|i| self.unrank(i))
    }
}

impl TryFrom<Vec<usize>> for AlphabetSpec {
    type Error = Error;
    fn try_from(sizes: Vec<usize>) -> Result<Self> {
        AlphabetSpec::new(sizes)
    }
}

impl From<AlphabetSpec> for Vec<usize> {
    fn from(s: AlphabetSpec) -> Vec<usize> {
        s.sizes
    }
}

/// Node that cannot tell `w` and `w2` apart, smallest first.
pub(crate) fn confusing_node(base: &DiGraph, w: &[usize], w2: &[usize]) -> Option<usize> {
    base.vertices().find(|&i| {
        w[i - 1] != w2[i - 1] && base.out_neighbors(i).iter().all(|&j| w[j - 1] == w2[j - 1])
    })
}

pub fn confusable(base: &DiGraph, spec: &AlphabetSpec, w: &[usize], w2: &[usize]) -> Result<bool> {
    if spec.len() != base.n() {
        return Err(Error::DimensionMismatch(format!(
            "alphabet has {} sizes for {} vertices",
            spec.len(),
            base.n()
        )));
    }
    spec.check_tuple(w)?;
    spec.check_tuple(w2)?;
    Ok(confusing_node(base, w, w2).is_some())
}

/// A binary mask is good when its support induces a subgraph without
/// isolated vertices.
pub fn is_good_sequence(base: &DiGraph, mask: &[u8]) -> Result<bool> {
    base.require_bidirectional()?;
    if mask.len() != base.n() {
        return Err(Error::DimensionMismatch(format!(
            "mask has {} entries for {} vertices",
            mask.len(),
            base.n()
        )));
    }
    if mask.iter().any(|&b| b > 1) {
        return Err(Error::InvalidParams("mask entries must be 0 or 1".into()));
    }
    Ok(base.vertices().all(|v| {
        mask[v - 1] == 0 || base.out_neighbors(v).iter().any(|&u| mask[u - 1] == 1)
    }))
}

/// Parses a 0/1 string such as `"11010"`.
pub fn parse_mask(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidParams(format!("bad mask character '{c}'"))),
        })
        .collect()
}
