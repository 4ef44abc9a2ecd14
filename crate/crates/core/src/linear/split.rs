use serde::{Deserialize, Serialize};

use super::code::{is_valid_linear_code, row_reduce, LinearIndexCode};
use crate::error::{Error, Result};
use crate::graph::DiGraph;

/// A valid code on `g` split along a sink side `V'` (no edges leave `V'`
/// towards the rest `V''`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCode {
    /// 1-based index of the first echelon row whose `V''` block is zero.
    pub s: usize,
    pub sink_vertices: Vec<usize>,
    pub source_vertices: Vec<usize>,
    /// Rows `s..n` on the `V'` columns; vertices relabeled in ascending order.
    pub sink_code: LinearIndexCode,
    /// Rows `1..s-1` on the `V''` columns; vertices relabeled in ascending order.
    pub source_code: LinearIndexCode,
    /// The row-reduced code with `V''` columns first.
    pub echelon: LinearIndexCode,
}

/// Checks that no edge leaves `sink` and returns `(sink, rest)` sorted.
pub fn sink_partition(g: &DiGraph, sink: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut inside = vec![false; g.n() + 1];
    for &v in sink {
        if v == 0 || v > g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        inside[v] = true;
    }
    for (u, v) in g.edges() {
        if inside[u] && !inside[v] {
            return Err(Error::NotASinkPartition(u, v));
        }
    }
    let sink_sorted: Vec<usize> = g.vertices().filter(|&v| inside[v]).collect();
    let rest: Vec<usize> = g.vertices().filter(|&v| !inside[v]).collect();
    Ok((sink_sorted, rest))
}

pub fn split_code(g: &DiGraph, code: &LinearIndexCode, sink: &[usize]) -> Result<SplitCode> {
    let (sink_vertices, source_vertices) = sink_partition(g, sink)?;
    let validity = is_valid_linear_code(g, code)?;
    if !validity.valid {
        let (node, coord) = validity.failure.expect("failure recorded");
        return Err(Error::InvalidCode(format!(
            "node {node} cannot decode symbol {coord}"
        )));
    }
    let n = code.length();
    let order: Vec<usize> = source_vertices.iter().chain(&sink_vertices).copied().collect();
    let permuted = code.restrict(&order, 0..n)?;
    let (echelon, _) = row_reduce(&permuted);
    let reduced = echelon.code;

    let source_width: usize = source_vertices.iter().map(|&v| code.dims()[v - 1]).sum();
    let s = reduced
        .rows()
        .iter()
        .position(|row| row[..source_width].iter().all(|&x| x == 0))
        .unwrap_or(n)
        + 1;

    let k = source_vertices.len();
    let source_nodes: Vec<usize> = (1..=k).collect();
    let sink_nodes: Vec<usize> = (k + 1..=order.len()).collect();
    let source_code = reduced.restrict(&source_nodes, 0..s - 1)?;
    let sink_code = reduced.restrict(&sink_nodes, s - 1..n)?;
    Ok(SplitCode {
        s,
        sink_vertices,
        source_vertices,
        sink_code,
        source_code,
        echelon: reduced,
    })
}

/// Block-diagonal concatenation: `a` on the first nodes, `b` on the rest.
pub fn block_diagonal(a: &LinearIndexCode, b: &LinearIndexCode) -> Result<LinearIndexCode> {
    if a.field() != b.field() {
        return Err(Error::DimensionMismatch("codes over different fields".into()));
    }
    let (wa, wb) = (a.width(), b.width());
    let mut rows = Vec::with_capacity(a.length() + b.length());
    for r in a.rows() {
        let mut row = r.clone();
        row.resize(wa + wb, 0);
        rows.push(row);
    }
    for r in b.rows() {
        let mut row = vec![0; wa];
        row.extend_from_slice(r);
        rows.push(row);
    }
    let dims = a.dims().iter().chain(b.dims()).copied().collect();
    LinearIndexCode::new(a.field(), dims, rows)
}
