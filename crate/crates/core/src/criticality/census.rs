use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bounds::{beta_interval, BetaInterval};
use crate::error::{Error, Result};
use crate::graph::{is_uscs, DiGraph};
use crate::scalar::{format_rational, parse_rational, serde_rational};
use crate::Rational;

/// Environment variable naming a directory that overrides the bundled data.
pub const DATA_DIR_ENV: &str = "INDEXCODING_DATA_DIR";
pub const CENSUS_FILE: &str = "census.json";

const BUNDLED: &str = include_str!("../../data/census.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub label: String,
    pub beta: Rational,
    pub graph: DiGraph,
}

#[derive(Deserialize)]
struct CensusFile {
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    label: String,
    beta: String,
    edges: Vec<(usize, usize)>,
}

pub fn parse_census(text: &str) -> Result<Vec<CensusEntry>> {
    let file: CensusFile =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    file.entries
        .into_iter()
        .map(|e| {
            let graph = DiGraph::from_edges(5, e.edges.iter().copied())
                .map_err(|err| Error::parse(0, format!("label {}: {err}", e.label)))?;
            let beta = parse_rational(&e.beta)
                .map_err(|err| Error::parse(0, format!("label {}: {err}", e.label)))?;
            Ok(CensusEntry {
                label: e.label,
                beta,
                graph,
            })
        })
        .collect()
}

/// Bundled census, or `$INDEXCODING_DATA_DIR/census.json` when set.
pub fn load_census() -> Result<Vec<CensusEntry>> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(CENSUS_FILE);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::DataFileMissing(format!("{}: {e}", path.display())))?;
            parse_census(&text)
        }
        None => parse_census(BUNDLED),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub label: String,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    pub interval: BetaInterval,
    pub contains: bool,
    pub uscs: bool,
    /// `Some(equal)` when the interval is tight.
    pub tight_equal: Option<bool>,
}

impl CensusRow {
    pub fn passes(&self) -> bool {
        self.contains && self.uscs && self.tight_equal != Some(false)
    }

    pub fn status(&self) -> &'static str {
        match self.tight_equal {
            Some(true) => "certified",
            Some(false) => "mismatch",
            None => "interval-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(CensusRow::passes)
    }

    pub fn certified(&self) -> usize {
        self.rows.iter().filter(|r| r.tight_equal == Some(true)).count()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<8} {:>5} {:>7} {:>7} {:>5} {:>5}  {}\n",
            "label", "beta", "lower", "upper", "uscs", "in", "status"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<8} {:>5} {:>7} {:>7} {:>5} {:>5}  {}",
                r.label,
                format_rational(&r.beta),
                format_rational(&r.interval.lower),
                format_rational(&r.interval.upper),
                r.uscs,
                r.contains,
                r.status()
            );
        }
        out
    }
}

pub fn census_verify(entries: &[CensusEntry]) -> Result<CensusReport> {
    let rows = entries
        .iter()
        .map(|e| {
            let interval = beta_interval(&e.graph)?;
            Ok(CensusRow {
                label: e.label.clone(),
                beta: e.beta.clone(),
                contains: interval.contains(&e.beta),
                uscs: is_uscs(&e.graph),
                tight_equal: interval.is_tight().then(|| interval.lower == e.beta),
                interval,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn bundled_census_loads() {
        let c = parse_census(BUNDLED).unwrap();
        assert_eq!(c.len(), 32);
        assert!(c.iter().all(|e| e.graph.n() == 5));
        let allowed = [int(1), int(2), ratio(5, 2), int(3), int(4), int(5)];
        assert!(c.iter().all(|e| allowed.contains(&e.beta)));
    }

    #[test]
    fn named_entries() {
        let c = parse_census(BUNDLED).unwrap();
        let r = census_verify(&c).unwrap();
        let find = |g: &DiGraph| {
            c.iter()
                .position(|e| crate::graph::is_isomorphic(&e.graph, g).unwrap())
                .expect("entry present")
        };
        let empty = find(&DiGraph::new(5));
        assert_eq!(r.rows[empty].interval.lower, int(5));
        assert_eq!(r.rows[empty].status(), "certified");
        let dc5 = find(&DiGraph::directed_cycle(5));
        assert_eq!(r.rows[dc5].interval.upper, int(4));
        let bc5 = find(&DiGraph::bidirectional_cycle(5));
        assert_eq!(r.rows[bc5].interval.lower, int(2));
        assert_eq!(r.rows[bc5].interval.upper, ratio(5, 2));
        assert_eq!(r.rows[bc5].status(), "interval-only");
        assert!(r.all_pass(), "{}", r.to_table());
    }

    #[test]
    fn malformed_census() {
        assert!(parse_census("{").is_err());
        let bad = r#"{"entries": [{"label": "x", "beta": "2", "edges": [[1, 6]]}]}"#;
        assert!(parse_census(bad).is_err());
    }
}
