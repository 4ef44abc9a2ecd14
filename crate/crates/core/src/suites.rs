//! Named reproduction suites. Each returns a list of checks; a suite passes
//! when every check does. Output is deterministic for a fixed build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::check_rate_vector;
use crate::confusion::{
    build_confusion_graph, chromatic_bounds, fig5_mask_code, is_good_sequence,
    max_distinguishable_family, verify_code, AlphabetSpec, C5_MASKS,
};
use crate::criticality::{
    census_verify, load_census, union_additivity_check_with, verify_structure_a, verify_structure_b,
};
use crate::error::{Error, Result};
use crate::graph::{is_acyclic_set, is_isomorphic, mais, minimal_equal_rate_graph, prune_to_uscs, DiGraph};
use crate::limits::Limits;
use crate::linear::{clique_xor_code, conjecture1_code, is_valid_linear_code, ApexParams};
use crate::scalar::{format_rational, int, ratio};
use crate::Rational;

pub const SUITES: [&str; 7] = [
    "thm1",
    "cycle5",
    "fig5",
    "thm5",
    "census",
    "additivity",
    "conjecture1",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}/{}: {}\n", self.suite, c.name, c.detail));
        }
        let total = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "{} {}: {ok}/{total} checks\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite
        ));
        out
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let checks = match name {
        "thm1" => thm1()?,
        "cycle5" => cycle5()?,
        "fig5" => c5_with_apex()?,
        "thm5" => thm5()?,
        "census" => census()?,
        "additivity" => additivity()?,
        "conjecture1" => conjecture1()?,
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport::new(name, checks))
}

/// Edge subsets of size `k` of the ordered pairs on `n` vertices.
fn for_each_edge_set(n: usize, k: usize, f: &mut impl FnMut(&DiGraph) -> Result<()>) -> Result<()> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > pairs.len() {
        return Ok(());
    }
    loop {
        let g = DiGraph::from_edges(n, idx.iter().map(|&i| pairs[i]))?;
        f(&g)?;
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] != i + pairs.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Equal rate `r` passes the acyclic-set test iff every acyclic induced
/// subgraph has at most `floor(1/r)` vertices.
fn meets_rate(g: &DiGraph, r: &Rational) -> Result<bool> {
    Ok(int(mais(g)?.size) * r <= int(1))
}

pub fn thm1() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (m, r) in [(4, ratio(1, 2)), (5, ratio(1, 2)), (5, ratio(1, 3))] {
        let label = format!("m={m},r={}", format_rational(&r));
        let min = minimal_equal_rate_graph(&r, m)?;
        let code = clique_xor_code(&min.graph, &min.cliques)?;
        let valid = is_valid_linear_code(&min.graph, &code)?.valid;
        let rate = code.symmetric_rate();
        out.push(check(
            format!("{label}/code"),
            valid && rate.as_ref() == Some(&r),
            format!(
                "{} edges, clique code valid={valid} rate={}",
                min.edge_count,
                rate.as_ref().map_or("none".into(), format_rational)
            ),
        ));
        let (mut sparser, mut at_count, mut non_iso) = (0usize, 0usize, 0usize);
        for k in 0..=min.edge_count {
            for_each_edge_set(m, k, &mut |g| {
                if meets_rate(g, &r)? {
                    if k < min.edge_count {
                        sparser += 1;
                    } else {
                        at_count += 1;
                        if !is_isomorphic(g, &min.graph)? {
                            non_iso += 1;
                        }
                    }
                }
                Ok(())
            })?;
        }
        out.push(check(
            format!("{label}/uniqueness"),
            sparser == 0 && at_count > 0 && non_iso == 0,
            format!(
                "{sparser} graphs below {} edges meet the rate; {at_count} at {} edges, {non_iso} not isomorphic",
                min.edge_count, min.edge_count
            ),
        ));
    }
    Ok(out)
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

pub fn cycle5() -> Result<Vec<Check>> {
    let g = DiGraph::bidirectional_cycle(5);
    let spec = AlphabetSpec::binary(5);
    let cg = build_confusion_graph(&g, &spec)?;
    let d = max_distinguishable_family(&cg)?;
    let masks: Vec<Vec<u8>> = C5_MASKS
        .iter()
        .map(|m| m.iter().map(|&b| b as u8).collect())
        .collect();
    let mut pairwise = true;
    for (a, x) in masks.iter().enumerate() {
        for y in &masks[a + 1..] {
            pairwise &= is_good_sequence(&g, &xor(x, y))?;
        }
    }
    let ranks: Vec<usize> = C5_MASKS
        .iter()
        .map(|m| spec.rank(m))
        .collect();
    let independent = cg.is_independent(&ranks);
    let lower = spec.tuple_count().div_ceil(d.size);
    let bounds = chromatic_bounds(&cg, &Limits::default());
    Ok(vec![
        check(
            "max-distinguishable",
            d.size == 5,
            format!("max distinguishable = {}", d.size),
        ),
        check(
            "mask-family",
            pairwise && independent,
            format!("five masks pairwise good={pairwise}, independent={independent}"),
        ),
        check(
            "oneshot-lower",
            lower >= 7 && bounds.lower >= 7,
            format!("χ ≥ {lower}; engine bounds [{}, {}]", bounds.lower, bounds.upper),
        ),
    ])
}

pub fn c5_with_apex() -> Result<Vec<Check>> {
    let (g, spec, code) = fig5_mask_code();
    let v = verify_code(&code);
    let mut out = vec![check(
        "mask-code",
        v.valid && code.n_symbols() == 32,
        format!("valid={} with {} symbols", v.valid, code.n_symbols()),
    )];
    let (pruned, removed) = prune_to_uscs(&g);
    let cg = build_confusion_graph(&pruned, &spec)?;
    let b = chromatic_bounds(&cg, &Limits::default());
    out.push(check(
        "pruned-join",
        cg.vertex_count() == 160 && b.blocks.len() == 5,
        format!(
            "{} removed edges, {} vertices, {} join blocks",
            removed.len(),
            cg.vertex_count(),
            b.blocks.len()
        ),
    ));
    out.push(check(
        "pruned-oneshot",
        b.lower >= 35,
        format!("min one-shot size in [{}, {}] ≥ 35", b.lower, b.upper),
    ));
    let full = build_confusion_graph(&g, &spec)?;
    let mut fb = chromatic_bounds(&full, &Limits::default());
    fb.tighten_with(&code);
    out.push(check(
        "full-oneshot",
        fb.is_exact() && fb.upper == 32,
        format!("min one-shot size in [{}, {}]", fb.lower, fb.upper),
    ));
    Ok(out)
}

/// Size vectors of length `len`, entries ≥ 1, summing to at most `total`.
fn size_vectors(len: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let rest = len - cur.len() - 1;
        for s in 1..=left.saturating_sub(rest) {
            cur.push(s);
            go(len, left - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= len {
        go(len, total, &mut Vec::new(), &mut out);
    }
    out
}

pub fn thm5() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in 3..=6 {
        let params = ApexParams::all(m);
        let (mut ok, mut small) = (0, 0);
        for p in &params {
            let r = verify_structure_a(p.m, p.i, p.j, p.k)?;
            let big = r.edges.iter().all(|e| e.witness.len() >= m);
            ok += usize::from(r.holds() && big);
            small += usize::from(!big);
        }
        out.push(check(
            format!("m={m}/base"),
            ok == params.len(),
            format!("{ok}/{} parameter sets verified", params.len()),
        ));
        let sizes = size_vectors(m + 1, 8);
        let (mut total, mut good) = (0, 0);
        for p in &params {
            for s in &sizes {
                if s.iter().all(|&x| x == 1) {
                    continue;
                }
                let r = verify_structure_b(*p, s)?;
                total += 1;
                good += usize::from(r.holds() && r.edges.iter().all(|e| e.witness.len() >= m));
            }
        }
        out.push(check(
            format!("m={m}/blowup"),
            good == total && small == 0,
            format!("{good}/{total} blow-ups verified"),
        ));
    }
    Ok(out)
}

pub fn census() -> Result<Vec<Check>> {
    let entries = load_census()?;
    let r = census_verify(&entries)?;
    let contain = r.rows.iter().filter(|x| x.contains).count();
    let uscs = r.rows.iter().filter(|x| x.uscs).count();
    let mismatch = r.rows.iter().filter(|x| x.tight_equal == Some(false)).count();
    let n = r.rows.len();
    Ok(vec![
        check(
            "containment",
            contain == n && n == 32,
            format!("{contain}/{n} containment"),
        ),
        check("uscs", uscs == n, format!("{uscs}/{n} USCS")),
        check(
            "tight",
            mismatch == 0,
            format!("{} tight intervals certified, {mismatch} mismatched", r.certified()),
        ),
    ])
}

pub(crate) fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> DiGraph {
    let mut g = DiGraph::new(n);
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid pair");
            }
        }
    }
    g
}

pub const ADDITIVITY_SEED: u64 = 0x1dc0de;

pub fn additivity() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(ADDITIVITY_SEED);
    let (mut pairs, mut additive, mut oneshot, mut sub) = (0, 0, 0, 0);
    let mut failures = Vec::new();
    while pairs < 100 {
        let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let p = rng.gen_range(0.2..0.8);
        let g = random_digraph(&mut rng, a, p);
        let h = random_digraph(&mut rng, b, p);
        let small = oneshot < 20 && a + b <= 6;
        let r = union_additivity_check_with(&g, &h, small)?;
        pairs += 1;
        if r.metrics.iter().all(|m| m.additive()) {
            additive += 1;
        } else {
            failures.extend(r.metrics.iter().filter(|m| !m.additive()).map(|m| m.metric));
        }
        if let Some(o) = &r.oneshot {
            oneshot += 1;
            sub += usize::from(o.submultiplicative());
        }
    }
    failures.sort_unstable();
    failures.dedup();
    Ok(vec![
        check(
            "metrics",
            additive == pairs,
            format!(
                "{additive}/{pairs} pairs additive in minrank, MAIS, clique cover, fractional cover, cycle cover{}",
                if failures.is_empty() { String::new() } else { format!("; failing: {}", failures.join(",")) }
            ),
        ),
        check(
            "oneshot",
            oneshot == 20 && sub == oneshot,
            format!("{sub}/{oneshot} pairs submultiplicative"),
        ),
    ])
}

pub fn conjecture1() -> Result<Vec<Check>> {
    let (g, code) = conjecture1_code();
    let valid = is_valid_linear_code(&g, &code)?.valid;
    let rates = code.rates();
    let expected = [int(1), ratio(1, 2), ratio(1, 2)];
    let rates_ok = (1..=3).all(|v| rates.get(v) == &expected[v - 1]);
    let outer = check_rate_vector(&g, &rates)?;
    // Each coordinate lies on an acyclic set whose rates sum to exactly 1.
    let tight_sets: Vec<Vec<usize>> = (1u32..8)
        .map(|mask| (1..=3).filter(|v| mask >> (v - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|s| is_acyclic_set(&g, s))
        .filter(|s| s.iter().map(|&v| rates.get(v).clone()).sum::<Rational>() == int(1))
        .collect();
    let tight = (1..=3).all(|v| tight_sets.iter().any(|s| s.contains(&v)));
    let fmt: Vec<String> = (1..=3).map(|v| format_rational(rates.get(v))).collect();
    Ok(vec![
        check(
            "code",
            valid && rates_ok,
            format!("valid={valid}, rates ({})", fmt.join(", ")),
        ),
        check(
            "outer-bound",
            outer.passes && tight,
            format!("outer bound met with equality on {:?}", tight_sets),
        ),
    ])
}
