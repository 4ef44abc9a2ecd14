use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use indexcoding::bounds::{beta_interval, BetaInterval};
use indexcoding::confusion::min_oneshot_bounds;
use indexcoding::graph::{is_uscs, mais_with_limit, prune_to_uscs, strongly_connected_components};
use indexcoding::linear::minrank_gf2_with;
use indexcoding::scalar::format_rational;
use indexcoding::{AlphabetSpec, DiGraph, Error, Limits};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Engine output, or `"skipped: <reason>"` when it could not run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Done(T),
    Skipped(String),
}

impl<T> Outcome<T> {
    fn skipped(e: &Error) -> Self {
        Outcome::Skipped(format!("skipped: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub sha256: String,
    pub n: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneDiff {
    pub kept: Vec<(usize, usize)>,
    pub removed: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaisResult {
    pub size: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneshotResult {
    pub sizes: Vec<usize>,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: Input,
    pub scc: Vec<Vec<usize>>,
    pub uscs: bool,
    pub prune: PruneDiff,
    pub mais: Outcome<MaisResult>,
    pub beta: Outcome<BetaInterval>,
    pub minrank_gf2: Outcome<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oneshot: Option<Outcome<OneshotResult>>,
    /// Wall-clock milliseconds per engine; omitted in golden mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

pub struct Analysis {
    pub report: AnalysisReport,
    /// Some engine stopped on a size limit or search budget.
    pub limit_hit: bool,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

struct Timer {
    golden: bool,
    times: BTreeMap<String, u64>,
    limit_hit: bool,
}

impl Timer {
    fn run<T, U>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> indexcoding::Result<T>,
        map: impl FnOnce(T) -> U,
    ) -> Outcome<U> {
        let start = Instant::now();
        let out = f();
        if !self.golden {
            self.times
                .insert(name.to_string(), start.elapsed().as_millis() as u64);
        }
        match out {
            Ok(v) => Outcome::Done(map(v)),
            Err(e) => {
                self.limit_hit |= e.is_limit();
                Outcome::skipped(&e)
            }
        }
    }
}

fn within(n: usize, max_n: usize, what: &'static str) -> indexcoding::Result<()> {
    if n > max_n {
        return Err(Error::SizeLimitExceeded {
            what,
            size: n,
            limit: max_n,
        });
    }
    Ok(())
}

pub fn analyze(
    bytes: &[u8],
    g: &DiGraph,
    sizes: Option<&[usize]>,
    limits: &Limits,
    golden: bool,
) -> Analysis {
    let mut t = Timer {
        golden,
        times: BTreeMap::new(),
        limit_hit: false,
    };
    let n = g.n();
    let scc = strongly_connected_components(g).components;
    let (kept, removed) = prune_to_uscs(g);
    let mais = t.run(
        "mais",
        || mais_with_limit(g, limits.mais_max_n),
        |m| MaisResult {
            size: m.size,
            witness: m.witness,
        },
    );
    let beta = t.run(
        "beta",
        || {
            within(n, limits.mais_max_n, "mais")?;
            within(n, limits.cover_max_n, "covers")?;
            within(n, limits.minrank_max_n, "minrank")?;
            beta_interval(g)
        },
        |b| b,
    );
    let minrank_gf2 = t.run(
        "minrank_gf2",
        || minrank_gf2_with(g, limits.minrank_max_n, limits.minrank_budget),
        |m| m.rank,
    );
    let oneshot = sizes.map(|sizes| {
        t.run(
            "oneshot",
            || {
                let spec = AlphabetSpec::with_limit(sizes.to_vec(), limits.max_tuples)?;
                min_oneshot_bounds(g, &spec, limits)
            },
            |b| OneshotResult {
                sizes: sizes.to_vec(),
                exact: b.is_exact(),
                lower: b.lower,
                upper: b.upper,
            },
        )
    });
    let report = AnalysisReport {
        input: Input {
            sha256: digest(bytes),
            n,
            edges: g.edge_count(),
        },
        scc,
        uscs: is_uscs(g),
        prune: PruneDiff {
            kept: kept.edges(),
            removed,
        },
        mais,
        beta,
        minrank_gf2,
        oneshot,
        timings_ms: (!golden).then_some(t.times),
    };
    Analysis {
        report,
        limit_hit: t.limit_hit,
    }
}

fn edges(list: &[(usize, usize)]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    let items: Vec<String> = list.iter().map(|(u, v)| format!("({u},{v})")).collect();
    items.join(" ")
}

fn vertices(list: &[usize]) -> String {
    let items: Vec<String> = list.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn outcome<T>(o: &Outcome<T>, f: impl FnOnce(&T) -> String) -> String {
    match o {
        Outcome::Done(v) => f(v),
        Outcome::Skipped(s) => s.clone(),
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let _ = writeln!(out, "graph: n={} edges={} sha256={}", i.n, i.edges, i.sha256);
        let comps: Vec<String> = self.scc.iter().map(|c| vertices(c)).collect();
        let _ = writeln!(out, "scc: {}", comps.join(" "));
        let _ = writeln!(out, "uscs: {}", self.uscs);
        let _ = writeln!(out, "prune removed: {}", edges(&self.prune.removed));
        let _ = writeln!(
            out,
            "mais: {}",
            outcome(&self.mais, |m| format!("{} {}", m.size, vertices(&m.witness)))
        );
        let _ = writeln!(
            out,
            "beta: {}",
            outcome(&self.beta, |b| format!(
                "[{}, {}] (lower {}, upper {})",
                format_rational(&b.lower),
                format_rational(&b.upper),
                b.lower_engine,
                b.upper_engine
            ))
        );
        let _ = writeln!(out, "minrank_gf2: {}", outcome(&self.minrank_gf2, usize::to_string));
        if let Some(o) = &self.oneshot {
            let _ = writeln!(
                out,
                "oneshot: {}",
                outcome(o, |r| format!(
                    "sizes {:?} symbols in [{}, {}]{}",
                    r.sizes,
                    r.lower,
                    r.upper,
                    if r.exact { " exact" } else { "" }
                ))
            );
        }
        if let Some(t) = &self.timings_ms {
            let items: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
            let _ = writeln!(out, "timings: {}", items.join(" "));
        }
        out
    }
}
