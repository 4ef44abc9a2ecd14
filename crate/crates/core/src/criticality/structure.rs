use serde::Serialize;

use crate::bounds::{check_rate_vector, RateVector};
use crate::error::Result;
use crate::graph::{is_acyclic_set, DiGraph};
use crate::linear::{blowup_code, cycle_apex_code, is_valid_linear_code, ApexParams};
use crate::scalar::serde_rational;
use crate::Rational;

/// Acyclic set certifying that a symmetric rate becomes infeasible once
/// `edge` is deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub edge: (usize, usize),
    pub witness: Vec<usize>,
    /// True when the set came from the explicit case analysis; false when
    /// it had to be found by the exhaustive rate check.
    pub explicit: bool,
    /// Witness is acyclic in `g - e` and its rate sum exceeds one.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub params: ApexParams,
    pub sizes: Vec<usize>,
    pub vertices: usize,
    #[serde(with = "serde_rational")]
    pub rate: Rational,
    /// The construction's code is valid and has symmetric rate `rate`.
    pub code_achieves_rate: bool,
    /// The rate also passes the acyclic-set test on the full graph.
    pub rate_passes_before: bool,
    pub edges: Vec<EdgeWitness>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.code_achieves_rate
            && self.rate_passes_before
            && self.edges.iter().all(|e| e.verified)
    }

    pub fn all_explicit(&self) -> bool {
        self.edges.iter().all(|e| e.explicit)
    }
}

/// Explicit witness for the unblown structure.
fn base_witness(p: &ApexParams, (u, v): (usize, usize)) -> Vec<usize> {
    let a = p.apex();
    let all_but = |x: usize| (1..=a).filter(move |&y| y != x).collect::<Vec<_>>();
    if u != a && v != a {
        (1..=p.m).collect()
    } else if u == a && v == 1 {
        all_but(p.i)
    } else if u == a {
        all_but(1)
    } else if u == p.j {
        all_but(p.k)
    } else {
        all_but(p.j)
    }
}

/// Explicit witness for the blow-up. Cross edges lift the base witness,
/// taking the endpoints' own copies; intra-clique edges keep both copies
/// of the clique and one copy of each vertex that cannot close a cycle.
fn blowup_witness(
    p: &ApexParams,
    labels: &[(usize, usize)],
    vertex: impl Fn(usize, usize) -> usize,
    (x, y): (usize, usize),
) -> Vec<usize> {
    let (u, s) = labels[x - 1];
    let (v, t) = labels[y - 1];
    let a = p.apex();
    let mut w: Vec<usize> = if u != v {
        base_witness(p, (u, v))
            .into_iter()
            .map(|b| match b {
                b if b == u => x,
                b if b == v => y,
                b => vertex(b, 1),
            })
            .collect()
    } else if u == a {
        let mut w: Vec<usize> = (1..=p.m)
            .filter(|&l| l != p.j && l != p.k)
            .map(|l| vertex(l, 1))
            .collect();
        w.extend([vertex(a, s), vertex(a, t)]);
        w
    } else {
        let prev = if u == 1 { p.m } else { u - 1 };
        let mut w: Vec<usize> = (1..=p.m)
            .filter(|&l| l != u && l != prev)
            .map(|l| vertex(l, 1))
            .collect();
        w.extend([vertex(u, s), vertex(u, t)]);
        w
    };
    w.sort_unstable();
    w
}

fn witness_holds(h: &DiGraph, set: &[usize], rate: &Rational) -> bool {
    is_acyclic_set(h, set) && Rational::from_integer(set.len().into()) * rate > Rational::from_integer(1.into())
}

fn check_edges(
    g: &DiGraph,
    rate: &Rational,
    explicit: impl Fn((usize, usize)) -> Vec<usize>,
) -> Result<Vec<EdgeWitness>> {
    let mut out = Vec::new();
    for e in g.edges() {
        let h = g.without_edge(e.0, e.1)?;
        let w = explicit(e);
        let item = if witness_holds(&h, &w, rate) {
            EdgeWitness {
                edge: e,
                witness: w,
                explicit: true,
                verified: true,
            }
        } else {
            let c = check_rate_vector(&h, &RateVector::symmetric(g.n(), rate.clone()))?;
            let witness = c.violating_set.unwrap_or_default();
            EdgeWitness {
                edge: e,
                verified: !witness.is_empty() && witness_holds(&h, &witness, rate),
                witness,
                explicit: false,
            }
        };
        out.push(item);
    }
    Ok(out)
}

fn report(
    params: ApexParams,
    sizes: Vec<usize>,
    g: &DiGraph,
    code_ok: bool,
    edges: Vec<EdgeWitness>,
    rate: Rational,
) -> Result<StructureReport> {
    let before = check_rate_vector(g, &RateVector::symmetric(g.n(), rate.clone()))?;
    Ok(StructureReport {
        params,
        sizes,
        vertices: g.n(),
        rate,
        code_achieves_rate: code_ok,
        rate_passes_before: before.passes,
        edges,
    })
}

/// Directed `m`-cycle with an apex: the rate `1/(m-1)` is achievable and
/// every edge deletion makes it infeasible.
pub fn verify_structure_a(m: usize, i: usize, j: usize, k: usize) -> Result<StructureReport> {
    let params = ApexParams::new(m, i, j, k)?;
    let (g, code) = cycle_apex_code(m, i, j, k)?;
    let rate = Rational::new(1.into(), (m - 1).into());
    let code_ok =
        is_valid_linear_code(&g, &code)?.valid && code.symmetric_rate() == Some(rate.clone());
    let edges = check_edges(&g, &rate, |e| base_witness(&params, e))?;
    report(params, vec![1; m + 1], &g, code_ok, edges, rate)
}

/// The apex structure with every vertex blown up into a clique.
pub fn verify_structure_b(params: ApexParams, sizes: &[usize]) -> Result<StructureReport> {
    let b = blowup_code(params, sizes)?;
    let rate = Rational::new(1.into(), (params.m - 1).into());
    let code_ok = is_valid_linear_code(&b.graph, &b.code)?.valid
        && b.code.symmetric_rate() == Some(rate.clone());
    let edges = check_edges(&b.graph, &rate, |e| {
        blowup_witness(&b.params, &b.labels, |u, t| b.vertex(u, t), e)
    })?;
    report(b.params, b.sizes.clone(), &b.graph, code_ok, edges, rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_structure_a() {
        let r = verify_structure_a(3, 2, 1, 3).unwrap();
        assert!(r.holds() && r.all_explicit(), "{r:?}");
        let w = |e| r.edges.iter().find(|x| x.edge == e).unwrap().witness.clone();
        assert_eq!(w((1, 2)), vec![1, 2, 3]);
        assert_eq!(w((4, 1)), vec![1, 3, 4]);
    }

    #[test]
    fn larger_structure_a() {
        let r = verify_structure_a(5, 3, 2, 4).unwrap();
        assert_eq!(r.edges.len(), 9);
        assert!(r.holds() && r.all_explicit());
    }

    #[test]
    fn blowup_reduces_to_part_a() {
        let p = ApexParams::new(3, 2, 1, 3).unwrap();
        let a = verify_structure_a(3, 2, 1, 3).unwrap();
        let b = verify_structure_b(p, &[1; 4]).unwrap();
        assert_eq!(a.edges, b.edges);
    }

    #[test]
    fn blowup_witnesses() {
        let p = ApexParams::new(3, 2, 1, 3).unwrap();
        let r = verify_structure_b(p, &[2, 1, 1, 1]).unwrap();
        assert!(r.holds() && r.all_explicit(), "{r:?}");
        // vertices: (1,1)=1 (1,2)=2 (2,1)=3 (3,1)=4 (4,1)=5
        let w = |e| r.edges.iter().find(|x| x.edge == e).unwrap().witness.clone();
        assert_eq!(w((1, 2)), vec![1, 2, 3]);
        assert!(r.edges.iter().any(|x| x.edge == (5, 1)));
    }

    #[test]
    fn bad_params() {
        assert!(verify_structure_a(3, 1, 1, 3).is_err());
        let p = ApexParams::new(3, 2, 1, 3).unwrap();
        assert!(verify_structure_b(p, &[1, 1]).is_err());
    }
}
