//! Bounds on the broadcast rate and necessary conditions on rate vectors.

mod cover;

pub use cover::{
    clique_cover_number, cycle_cover_bound, fractional_clique_cover, fractional_clique_cover_with,
    is_bidirectional_clique, maximal_cliques, CliqueCover, CycleCover, FractionalCover,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};
use crate::graph::acyclic::{acyclic_table, local_masks, preferred};
use crate::graph::{mais, strongly_connected_components, DiGraph};
use crate::limits::Limits;
use crate::linear::minrank_gf2;
use crate::scalar::{int, serde_rational, Scalar};
use crate::Rational;

/// Per-vertex rates `r_1..r_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RateVector<T = Rational> {
    pub rates: Vec<T>,
}

impl<T: Scalar> RateVector<T> {
    pub fn new(rates: Vec<T>) -> Result<Self> {
        if rates.iter().any(|r| r.is_strictly_negative()) {
            return Err(Error::InvalidParams("rates must be non-negative".into()));
        }
        Ok(RateVector { rates })
    }

    /// The same rate on all `n` vertices.
    pub fn symmetric(n: usize, r: T) -> Self {
        RateVector { rates: vec![r; n] }
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    pub fn get(&self, v: usize) -> &T {
        &self.rates[v - 1]
    }
}

/// Outcome of the acyclic-set test on a rate vector.
#[derive(Clone, Debug, PartialEq)]
pub struct RateCheck<T = Rational> {
    pub passes: bool,
    /// Largest rate sum over induced-acyclic sets.
    pub max_acyclic_sum: T,
    /// A set attaining `max_acyclic_sum`.
    pub heaviest_set: Vec<usize>,
    /// `Some(heaviest_set)` when the sum exceeds one.
    pub violating_set: Option<Vec<usize>>,
}

/// Checks `sum_{i in X} r_i <= 1` for every induced-acyclic `X`.
///
/// Only the heaviest acyclic set matters; it is assembled from the heaviest
/// set of each strongly connected component, since cycles never cross
/// components. Necessary for achievability, not sufficient.
pub fn check_rate_vector<T: Scalar>(g: &DiGraph, r: &RateVector<T>) -> Result<RateCheck<T>> {
    if r.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "rate vector has {} entries for {} vertices",
            r.len(),
            g.n()
        )));
    }
    check_limit("rate check", g.n(), Limits::default().mais_max_n)?;
    let scc = strongly_connected_components(g);
    let mut total = T::zero();
    let mut heaviest = Vec::new();
    for comp in &scc.components {
        if comp.len() == 1 {
            total = total + r.get(comp[0]).clone();
            heaviest.push(comp[0]);
            continue;
        }
        let table = acyclic_table(&local_masks(g, comp));
        let weight = |set: usize| {
            (0..comp.len())
                .filter(|k| set >> k & 1 == 1)
                .fold(T::zero(), |acc, k| acc + r.get(comp[k]).clone())
        };
        let mut best = 0usize;
        let mut best_w = T::zero();
        for (set, &ok) in table.iter().enumerate().skip(1) {
            if !ok {
                continue;
            }
            let w = weight(set);
            let d = w.clone() - best_w.clone();
            if d.is_strictly_positive() || (d.is_negligible() && preferred(set, best)) {
                best = set;
                best_w = w;
            }
        }
        total = total + best_w;
        heaviest.extend((0..comp.len()).filter(|k| best >> k & 1 == 1).map(|k| comp[k]));
    }
    heaviest.sort_unstable();
    let passes = !(total.clone() - T::one()).is_strictly_positive();
    Ok(RateCheck {
        passes,
        violating_set: (!passes).then(|| heaviest.clone()),
        heaviest_set: heaviest,
        max_acyclic_sum: total,
    })
}

/// An engine producing an upper bound on the broadcast rate.
pub trait UpperBoundEngine {
    fn name(&self) -> &'static str;
    fn upper_bound(&self, g: &DiGraph) -> Result<Rational>;
}

pub struct FractionalCliqueCoverEngine;
pub struct CycleCoverEngine;
pub struct MinrankEngine;

impl UpperBoundEngine for FractionalCliqueCoverEngine {
    fn name(&self) -> &'static str {
        "fractional_clique_cover"
    }
    fn upper_bound(&self, g: &DiGraph) -> Result<Rational> {
        Ok(fractional_clique_cover(g)?.0)
    }
}

impl UpperBoundEngine for CycleCoverEngine {
    fn name(&self) -> &'static str {
        "cycle_cover"
    }
    fn upper_bound(&self, g: &DiGraph) -> Result<Rational> {
        Ok(int(cycle_cover_bound(g)?.value))
    }
}

impl UpperBoundEngine for MinrankEngine {
    fn name(&self) -> &'static str {
        "minrank_gf2"
    }
    fn upper_bound(&self, g: &DiGraph) -> Result<Rational> {
        Ok(int(minrank_gf2(g)?.rank))
    }
}

pub fn default_engines() -> Vec<Box<dyn UpperBoundEngine>> {
    vec![
        Box::new(FractionalCliqueCoverEngine),
        Box::new(CycleCoverEngine),
        Box::new(MinrankEngine),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaInterval {
    #[serde(with = "serde_rational")]
    pub lower: Rational,
    #[serde(with = "serde_rational")]
    pub upper: Rational,
    pub lower_engine: String,
    /// First engine (in run order) attaining the upper bound.
    pub upper_engine: String,
    /// Value reported by every engine, keyed by engine name.
    #[serde(with = "serde_rational::map")]
    pub engines: BTreeMap<String, Rational>,
}

impl BetaInterval {
    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, beta: &Rational) -> bool {
        &self.lower <= beta && beta <= &self.upper
    }
}

pub fn beta_interval(g: &DiGraph) -> Result<BetaInterval> {
    let engines = default_engines();
    let refs: Vec<&dyn UpperBoundEngine> = engines.iter().map(|e| e.as_ref()).collect();
    beta_interval_with(g, &refs)
}

/// Lower bound from MAIS, upper bound the least value over `engines`.
pub fn beta_interval_with(g: &DiGraph, engines: &[&dyn UpperBoundEngine]) -> Result<BetaInterval> {
    let lower = int(mais(g)?.size);
    let mut values = BTreeMap::new();
    values.insert("mais".to_string(), lower.clone());
    let mut best: Option<(Rational, &'static str)> = None;
    for e in engines {
        let v = e.upper_bound(g)?;
        if best.as_ref().map_or(true, |(b, _)| &v < b) {
            best = Some((v.clone(), e.name()));
        }
        values.insert(e.name().to_string(), v);
    }
    // with no engines only the trivial bound n remains
    let (upper, upper_engine) = best.unwrap_or_else(|| (int(g.n()), "trivial"));
    let upper_engine = upper_engine.to_string();
    debug_assert!(lower <= upper);
    Ok(BetaInterval {
        lower,
        upper,
        lower_engine: "mais".into(),
        upper_engine,
        engines: values,
    })
}
