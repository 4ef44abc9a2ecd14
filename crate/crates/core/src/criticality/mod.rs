//! Criticality checks: per-edge degradation reports, certificates for
//! bidirectional graphs, the cycle-with-apex structures, unions and the
//! bundled 5-vertex census.

mod census;
mod structure;
mod union;

pub use census::{
    census_verify, load_census, parse_census, CensusEntry, CensusReport, CensusRow,
    CENSUS_FILE, DATA_DIR_ENV,
};
pub use structure::{verify_structure_a, verify_structure_b, EdgeWitness, StructureReport};
pub use union::{union_additivity_check, union_additivity_check_with, Additivity, OneshotProduct, UnionReport};

use serde::Serialize;

use crate::bounds::{beta_interval, check_rate_vector, BetaInterval, RateCheck, RateVector};
use crate::confusion::{min_oneshot_bounds, verify_code, AlphabetSpec, CodeTable};
use crate::error::{Error, Result};
use crate::graph::{prune_to_uscs, strongly_connected_components, DiGraph};
use crate::limits::Limits;
use crate::linear::{is_valid_linear_code, LinearIndexCode, GF2};
use crate::scalar::{int, ratio, serde_rational};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StrictlyDegrades,
    NoChange,
    Unknown,
}

/// Closed integer interval for a one-shot size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBounds {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    None,
    /// A valid code on `g` with `symbols` symbols, and a proven lower bound
    /// above it on `g - e`.
    SizeIncrease { symbols: usize, after_lower: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub edge: (usize, usize),
    pub after: SizeBounds,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub setting: String,
    pub before: SizeBounds,
    /// Coloring of the confusion graph realizing `before.upper`.
    #[serde(skip)]
    pub before_code: Option<CodeTable>,
    pub edges: Vec<EdgeReport>,
}

impl CriticalityReport {
    pub fn all_degrade(&self) -> bool {
        self.edges.iter().all(|e| e.verdict == Verdict::StrictlyDegrades)
    }
}

fn bounds_with_hint(
    g: &DiGraph,
    spec: &AlphabetSpec,
    limits: &Limits,
    hint: Option<&CodeTable>,
) -> Result<(SizeBounds, CodeTable)> {
    let mut b = min_oneshot_bounds(g, spec, limits)?;
    if let Some(code) = hint {
        b.tighten_with(code);
    }
    let code = CodeTable::from_coloring(g, spec, &b.coloring)?;
    Ok((
        SizeBounds {
            lower: b.lower,
            upper: b.upper,
        },
        code,
    ))
}

fn compare(edge: (usize, usize), before: SizeBounds, after: SizeBounds) -> EdgeReport {
    let (verdict, certificate) = if after.lower > before.upper {
        (
            Verdict::StrictlyDegrades,
            Certificate::SizeIncrease {
                symbols: before.upper,
                after_lower: after.lower,
            },
        )
    } else if before.lower == before.upper && after == before {
        (Verdict::NoChange, Certificate::None)
    } else {
        (Verdict::Unknown, Certificate::None)
    };
    EdgeReport {
        edge,
        after,
        verdict,
        certificate,
    }
}

/// Recomputes the one-shot size on `g - e` for every edge.
pub fn oneshot_edge_report(g: &DiGraph, spec: &AlphabetSpec) -> Result<CriticalityReport> {
    oneshot_edge_report_with(g, spec, &Limits::default(), None)
}

/// As [`oneshot_edge_report`]; `hint` is a known code on `g` that may
/// tighten the baseline.
pub fn oneshot_edge_report_with(
    g: &DiGraph,
    spec: &AlphabetSpec,
    limits: &Limits,
    hint: Option<&CodeTable>,
) -> Result<CriticalityReport> {
    let (before, code) = bounds_with_hint(g, spec, limits, hint)?;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (after, _) = bounds_with_hint(&g.without_edge(u, v)?, spec, limits, None)?;
        edges.push(compare((u, v), before, after));
    }
    Ok(CriticalityReport {
        setting: "one-shot".into(),
        before,
        before_code: Some(code),
        edges,
    })
}

/// Effect of deleting a set of edges at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalReport {
    pub removed: Vec<(usize, usize)>,
    pub before: SizeBounds,
    pub after: SizeBounds,
    pub verdict: Verdict,
}

pub fn oneshot_removal_report(
    g: &DiGraph,
    spec: &AlphabetSpec,
    removed: &[(usize, usize)],
    limits: &Limits,
    hint: Option<&CodeTable>,
) -> Result<RemovalReport> {
    let (before, _) = bounds_with_hint(g, spec, limits, hint)?;
    let mut h = g.clone();
    for &(u, v) in removed {
        h = h.without_edge(u, v)?;
    }
    let (after, _) = bounds_with_hint(&h, spec, limits, None)?;
    let verdict = compare((0, 0), before, after).verdict;
    Ok(RemovalReport {
        removed: removed.to_vec(),
        before,
        after,
        verdict,
    })
}

/// Re-checks a strictly-degrades verdict: the baseline code must be valid
/// and the stated lower bound must be reproduced on `g - e`.
pub fn recheck_edge(
    g: &DiGraph,
    spec: &AlphabetSpec,
    report: &CriticalityReport,
    edge: &EdgeReport,
) -> Result<bool> {
    let Certificate::SizeIncrease {
        symbols,
        after_lower,
    } = edge.certificate
    else {
        return Ok(edge.verdict != Verdict::StrictlyDegrades);
    };
    let code_ok = report
        .before_code
        .as_ref()
        .is_some_and(|c| c.n_symbols() <= symbols && verify_code(c).valid);
    let h = g.without_edge(edge.edge.0, edge.edge.1)?;
    let after = min_oneshot_bounds(&h, spec, &Limits::default())?;
    Ok(code_ok && after.lower >= after_lower && after_lower > symbols)
}

/// Rate-vector witness that deleting one edge of a bidirectional graph
/// strictly shrinks its capacity region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BidirectionalCertificate {
    pub edge: (usize, usize),
    #[serde(with = "serde_rational::vec")]
    pub rates: Vec<Rational>,
    /// The one-row code `W_u + W_v` is valid on `g`.
    pub achievable_before: bool,
    /// Heaviest acyclic set on `g - e` and its rate sum.
    pub violating_set: Option<Vec<usize>>,
    #[serde(with = "serde_rational")]
    pub sum_after: Rational,
}

impl BidirectionalCertificate {
    pub fn holds(&self) -> bool {
        self.achievable_before && self.violating_set.is_some()
    }

    pub fn rate_vector(&self) -> RateVector {
        RateVector {
            rates: self.rates.clone(),
        }
    }
}

pub fn bidirectional_certificate(g: &DiGraph, e: (usize, usize)) -> Result<BidirectionalCertificate> {
    g.require_bidirectional()?;
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(Error::NoSuchEdge(u, v));
    }
    let n = g.n();
    let dims: Vec<usize> = (1..=n).map(|x| usize::from(x == u || x == v)).collect();
    let mut row = vec![0u32; 2];
    row[0] = 1;
    row[1] = 1;
    let code = LinearIndexCode::new(GF2, dims, vec![row])?;
    let achievable_before = is_valid_linear_code(g, &code)?.valid;
    let rates = code.rates();
    let check = check_rate_vector(&g.without_edge(u, v)?, &rates)?;
    Ok(BidirectionalCertificate {
        edge: e,
        rates: rates.rates,
        achievable_before,
        violating_set: check.violating_set,
        sum_after: check.max_acyclic_sum,
    })
}

/// Bidirectional 4-cycle versus its two-edge-pair subgraph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C4Demonstration {
    pub subgraph_edges: Vec<(usize, usize)>,
    pub subgraph_code_valid: bool,
    pub subgraph_symbols: usize,
    #[serde(with = "serde_rational")]
    pub subgraph_rate: Rational,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    /// Symmetric rate `1/2 + epsilon` on the full 4-cycle.
    #[serde(skip)]
    pub above_half: RateCheck,
    pub beta: BetaInterval,
}

impl C4Demonstration {
    pub fn holds(&self) -> bool {
        self.subgraph_code_valid
            && self.subgraph_symbols == 4
            && self.subgraph_rate == ratio(1, 2)
            && !self.above_half.passes
            && self.beta.is_tight()
            && self.beta.lower == int(2)
    }
}

pub fn c4_not_symmetric_critical() -> Result<C4Demonstration> {
    let c4 = DiGraph::bidirectional_cycle(4);
    let pairs = [(1, 2), (2, 1), (3, 4), (4, 3)];
    let h = DiGraph::from_edges(4, pairs)?;
    let code = LinearIndexCode::new(GF2, vec![1; 4], vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]])?;
    let table = code.to_code_table(&h)?;
    let valid = is_valid_linear_code(&h, &code)?.valid && verify_code(&table).valid;
    let epsilon = ratio(1, 10);
    let above_half = check_rate_vector(&c4, &RateVector::symmetric(4, ratio(1, 2) + &epsilon))?;
    Ok(C4Demonstration {
        subgraph_edges: pairs.to_vec(),
        subgraph_code_valid: valid,
        subgraph_symbols: table.n_symbols(),
        subgraph_rate: code.symmetric_rate().unwrap_or_else(|| int(0)),
        epsilon,
        above_half,
        beta: beta_interval(&c4)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UscsReport {
    pub is_uscs: bool,
    /// Edges on no directed cycle; each is removable without loss in the
    /// linear, one-shot linear and asymptotic settings.
    pub removable: Vec<(usize, usize)>,
    /// Some removable edge enters a nontrivial component, the pattern where
    /// one-shot non-linear codes can still exploit it.
    pub oneshot_exception: bool,
}

pub fn uscs_necessity_report(g: &DiGraph) -> UscsReport {
    let (_, removable) = prune_to_uscs(g);
    let scc = strongly_connected_components(g);
    let oneshot_exception = removable.iter().any(|&(_, v)| {
        let c = scc.component_of(v);
        scc.components[c].len() > 1
    });
    UscsReport {
        is_uscs: removable.is_empty(),
        removable,
        oneshot_exception,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confusion::fig5_mask_code;
    use crate::graph::fixtures::acyclic_five;

    #[test]
    fn k2_edges_degrade() {
        let r = oneshot_edge_report(&DiGraph::complete(2), &AlphabetSpec::binary(2)).unwrap();
        assert_eq!(r.before, SizeBounds { lower: 2, upper: 2 });
        assert_eq!(r.edges.len(), 2);
        for e in &r.edges {
            assert_eq!(e.after, SizeBounds { lower: 4, upper: 4 });
            assert_eq!(e.verdict, Verdict::StrictlyDegrades);
            assert!(recheck_edge(&DiGraph::complete(2), &AlphabetSpec::binary(2), &r, e).unwrap());
        }
        assert!(r.all_degrade());
    }

    #[test]
    fn edgeless_report_is_empty() {
        let r = oneshot_edge_report(&DiGraph::new(3), &AlphabetSpec::binary(3)).unwrap();
        assert!(r.edges.is_empty());
        assert_eq!(r.before.upper, 8);
    }

    #[test]
    fn bidirectional_certificates() {
        let c = bidirectional_certificate(&DiGraph::complete(2), (1, 2)).unwrap();
        assert_eq!(c.rates, vec![int(1), int(1)]);
        assert!(c.holds());
        assert_eq!(c.sum_after, int(2));
        let c = bidirectional_certificate(&DiGraph::bidirectional_cycle(4), (1, 2)).unwrap();
        assert_eq!(c.rates, vec![int(1), int(1), int(0), int(0)]);
        assert!(c.holds());
        assert!(matches!(
            bidirectional_certificate(&DiGraph::directed_cycle(3), (1, 2)),
            Err(Error::NotBidirectional(..))
        ));
        assert!(matches!(
            bidirectional_certificate(&DiGraph::bidirectional_cycle(4), (1, 3)),
            Err(Error::NoSuchEdge(1, 3))
        ));
    }

    #[test]
    fn c4_demo() {
        let d = c4_not_symmetric_critical().unwrap();
        assert!(d.holds(), "{d:?}");
        assert_eq!(d.above_half.violating_set, Some(vec![1, 3]));
    }

    #[test]
    fn uscs_reports() {
        let r = uscs_necessity_report(&acyclic_five());
        assert!(!r.is_uscs);
        assert_eq!(r.removable, acyclic_five().edges());
        let (g, _, _) = fig5_mask_code();
        let r = uscs_necessity_report(&g);
        assert_eq!(r.removable.len(), 5);
        assert!(r.oneshot_exception);
        let r = uscs_necessity_report(&DiGraph::bidirectional_cycle(6));
        assert!(r.is_uscs && r.removable.is_empty() && !r.oneshot_exception);
    }
}
