use std::fmt::Write as _;

use super::{DiGraph, GraphJson};
use crate::error::{Error, Result};

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Content lines paired with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.is_empty())
}

pub(crate) fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found '{tok}'")))
}

/// Parses the `n <count>` / `u v` text format.
pub fn parse_graph(text: &str) -> Result<DiGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let n = match toks.as_slice() {
        ["n", count] => parse_usize(hline, count, "vertex count")?,
        _ => return Err(Error::parse(hline, "expected header 'n <count>'")),
    };
    let mut g = DiGraph::new(n);
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(Error::parse(lineno, "expected 'u v'"));
        };
        let u = parse_usize(lineno, u, "vertex")?;
        let v = parse_usize(lineno, v, "vertex")?;
        match g.add_edge(u, v) {
            Ok(true) => {}
            Ok(false) => return Err(Error::parse(lineno, format!("duplicate edge ({u}, {v})"))),
            Err(e) => return Err(Error::parse(lineno, e.to_string())),
        }
    }
    Ok(g)
}

/// Parses either the text format or its JSON mirror.
pub fn parse_graph_any(text: &str) -> Result<DiGraph> {
    if text.trim_start().starts_with('{') {
        let j: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        DiGraph::try_from(j).map_err(|e| Error::parse(1, e.to_string()))
    } else {
        parse_graph(text)
    }
}

pub fn write_graph(g: &DiGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
