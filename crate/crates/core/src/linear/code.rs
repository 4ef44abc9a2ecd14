use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::matrix::{self, Matrix};
use crate::bounds::RateVector;
use crate::confusion::{AlphabetSpec, CodeTable};
use crate::error::{Error, Result};
use crate::graph::text::{content_lines, parse_usize};
use crate::graph::DiGraph;
use crate::limits::Limits;
use crate::scalar::int;
use crate::Rational;

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

/// Linear index code: the public message is `C w` for the stacked message
/// vector `w`, columns grouped by node in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearIndexCode {
    field: PrimeField,
    dims: Vec<usize>,
    rows: Matrix,
    offsets: Vec<usize>,
}

impl LinearIndexCode {
    pub fn new(field: PrimeField, dims: Vec<usize>, rows: Matrix) -> Result<Self> {
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        for (k, row) in rows.iter().enumerate() {
            if row.len() != acc {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {acc}",
                    k + 1,
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| !field.contains(v)) {
                return Err(Error::InvalidParams(format!(
                    "entry {v} in row {} is outside GF({})",
                    k + 1,
                    field.q()
                )));
            }
        }
        Ok(LinearIndexCode {
            field,
            dims,
            rows,
            offsets,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    /// Number of nodes `m`.
    pub fn nodes(&self) -> usize {
        self.dims.len()
    }

    /// Code length `n`: number of transmitted field symbols.
    pub fn length(&self) -> usize {
        self.rows.len()
    }

    /// Total message symbols `sum l_i`.
    pub fn width(&self) -> usize {
        self.offsets[self.dims.len()]
    }

    /// 0-based column of symbol `w_{ij}` (both 1-based).
    pub fn column(&self, node: usize, coord: usize) -> usize {
        self.offsets[node - 1] + coord - 1
    }

    pub fn node_columns(&self, node: usize) -> Range<usize> {
        self.offsets[node - 1]..self.offsets[node]
    }

    /// Node and coordinate (1-based) owning a 0-based column.
    pub fn column_owner(&self, col: usize) -> (usize, usize) {
        let node = self.offsets.partition_point(|&o| o <= col);
        (node, col - self.offsets[node - 1] + 1)
    }

    /// `r_i = l_i / n`.
    pub fn rates(&self) -> RateVector<Rational> {
        let n = self.length();
        let rates = self
            .dims
            .iter()
            .map(|&l| {
                if n == 0 {
                    int(0)
                } else {
                    Rational::new(l.into(), n.into())
                }
            })
            .collect();
        RateVector { rates }
    }

    /// The common rate when all nodes have the same rate.
    pub fn symmetric_rate(&self) -> Option<Rational> {
        let r = self.rates().rates;
        let first = r.first()?.clone();
        r.iter().all(|x| *x == first).then_some(first)
    }

    /// Encodes a stacked message vector.
    pub fn encode(&self, w: &[u32]) -> Vec<u32> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(w)
                    .fold(0, |acc, (&c, &x)| self.field.add(acc, self.field.mul(c, x)))
            })
            .collect()
    }

    /// Alphabet seen by the one-shot view: node `i` carries `q^{d_i}` values.
    pub fn alphabet(&self) -> Result<AlphabetSpec> {
        let q = self.field.q() as usize;
        let sizes = self
            .dims
            .iter()
            .map(|&d| checked_pow(q, d))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::SizeLimitExceeded {
                what: "tuple space",
                size: usize::MAX,
                limit: Limits::default().max_tuples,
            })?;
        AlphabetSpec::new(sizes)
    }

    /// Expands to an explicit table. Message values and codewords are read
    /// as base-q numbers, first coordinate most significant; symbols start at 1.
    pub fn to_code_table(&self, g: &DiGraph) -> Result<CodeTable> {
        let spec = self.alphabet()?;
        let q = self.field.q() as usize;
        let n_symbols = checked_pow(q, self.length()).ok_or(Error::SizeLimitExceeded {
            what: "code symbols",
            size: usize::MAX,
            limit: usize::MAX,
        })?;
        let symbols = spec
            .tuples()
            .map(|w| {
                let mut stacked = Vec::with_capacity(self.width());
                for (&x, &d) in w.iter().zip(&self.dims) {
                    stacked.extend((0..d).rev().map(|e| (x / q.pow(e as u32) % q) as u32));
                }
                1 + self.encode(&stacked).iter().fold(0, |acc, &c| acc * q + c as usize)
            })
            .collect();
        CodeTable::new(g, &spec, n_symbols, symbols)
    }

    /// Restriction to the columns of `nodes` (ascending output order follows
    /// the given order) and to the row range `rows`.
    pub(crate) fn restrict(&self, nodes: &[usize], rows: Range<usize>) -> Result<Self> {
        let cols: Vec<usize> = nodes.iter().flat_map(|&v| self.node_columns(v)).collect();
        let dims = nodes.iter().map(|&v| self.dims[v - 1]).collect();
        let m = self.rows[rows]
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        LinearIndexCode::new(self.field, dims, m)
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    q: u32,
    n: usize,
    m: usize,
    dims: Vec<usize>,
    rows: Matrix,
}

impl Serialize for LinearIndexCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeJson {
            q: self.field.q(),
            n: self.length(),
            m: self.nodes(),
            dims: self.dims.clone(),
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearIndexCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CodeJson::deserialize(d)?;
        if j.rows.len() != j.n || j.dims.len() != j.m {
            return Err(D::Error::custom("header counts disagree with dims/rows"));
        }
        let field = PrimeField::new(j.q).map_err(D::Error::custom)?;
        LinearIndexCode::new(field, j.dims, j.rows).map_err(D::Error::custom)
    }
}

/// Parses the `q n m` / `dims ...` / rows text format.
pub fn parse_code(text: &str) -> Result<LinearIndexCode> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty code file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [q, n, m] = toks.as_slice() else {
        return Err(Error::parse(hl, "expected header 'q n m'"));
    };
    let q = parse_usize(hl, q, "field size")?;
    let n = parse_usize(hl, n, "code length")?;
    let m = parse_usize(hl, m, "node count")?;
    let field = u32::try_from(q)
        .ok()
        .and_then(|q| PrimeField::new(q).ok())
        .ok_or_else(|| Error::parse(hl, format!("{q} is not a supported prime")))?;

    let (dl, dline) = lines.next().ok_or_else(|| Error::parse(hl + 1, "missing dims line"))?;
    let mut toks = dline.split_whitespace();
    if toks.next() != Some("dims") {
        return Err(Error::parse(dl, "expected 'dims l_1 ... l_m'"));
    }
    let dims = toks
        .map(|t| parse_usize(dl, t, "dimension"))
        .collect::<Result<Vec<_>>>()?;
    if dims.len() != m {
        return Err(Error::parse(dl, format!("expected {m} dimensions, found {}", dims.len())));
    }
    let width: usize = dims.iter().sum();
    let mut rows = Vec::with_capacity(n);
    let mut last = dl;
    for (lineno, line) in lines {
        last = lineno;
        let row = line
            .split_whitespace()
            .map(|t| {
                let v = parse_usize(lineno, t, "field element")?;
                if v >= field.q() as usize {
                    return Err(Error::parse(lineno, format!("{v} is outside GF({q})")));
                }
                Ok(v as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != width {
            return Err(Error::parse(
                lineno,
                format!("expected {width} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    // zero-width rows are blank lines, which the reader skips
    if width == 0 && rows.is_empty() {
        rows = vec![Vec::new(); n];
    }
    if rows.len() != n {
        return Err(Error::parse(last, format!("expected {n} rows, found {}", rows.len())));
    }
    LinearIndexCode::new(field, dims, rows)
}

pub fn parse_code_any(text: &str) -> Result<LinearIndexCode> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    } else {
        parse_code(text)
    }
}

pub fn write_code(code: &LinearIndexCode) -> String {
    let mut out = format!("{} {} {}\ndims", code.field.q(), code.length(), code.nodes());
    for d in &code.dims {
        let _ = write!(out, " {d}");
    }
    out.push('\n');
    for row in &code.rows {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Echelon form of a code's matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    pub code: LinearIndexCode,
    /// Pivot symbols `(node, coordinate)`, strictly increasing.
    pub pivots: Vec<(usize, usize)>,
    /// 0-based pivot columns.
    pub pivot_columns: Vec<usize>,
}

/// Row echelon form with unit pivots, plus the invertible row transform.
pub fn row_reduce(code: &LinearIndexCode) -> (EchelonForm, Matrix) {
    let mut m = code.rows.clone();
    let (pivot_columns, t) = matrix::row_echelon(code.field, &mut m, code.width());
    let pivots = pivot_columns.iter().map(|&c| code.column_owner(c)).collect();
    let reduced = LinearIndexCode {
        rows: m,
        ..code.clone()
    };
    (
        EchelonForm {
            code: reduced,
            pivots,
            pivot_columns,
        },
        t,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideTerm {
    pub node: usize,
    pub coord: usize,
    pub coeff: u32,
}

/// How one node recovers one of its symbols: `sum_k alpha_k t_k` equals
/// `w_{node,coord}` plus the listed side-information terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decoder {
    pub node: usize,
    pub coord: usize,
    pub alpha: Vec<u32>,
    pub gamma: Vec<SideTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingCertificate {
    pub decoders: Vec<Decoder>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validity {
    pub valid: bool,
    pub certificate: Option<DecodingCertificate>,
    /// First symbol `(node, coord)` that cannot be decoded.
    pub failure: Option<(usize, usize)>,
}

fn check_layout(g: &DiGraph, code: &LinearIndexCode) -> Result<()> {
    if code.nodes() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "code has {} nodes, graph has {}",
            code.nodes(),
            g.n()
        )));
    }
    Ok(())
}

/// Validity by solving, per symbol, for a row combination that equals the
/// unit vector outside the decoder's side-information columns.
pub fn is_valid_linear_code(g: &DiGraph, code: &LinearIndexCode) -> Result<Validity> {
    check_layout(g, code)?;
    let f = code.field;
    let width = code.width();
    let mut decoders = Vec::new();
    for node in g.vertices() {
        let mut side = vec![false; width];
        for &v in g.out_neighbors(node) {
            for c in code.node_columns(v) {
                side[c] = true;
            }
        }
        let masked: Matrix = code
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&side)
                    .map(|(&x, &s)| if s { 0 } else { x })
                    .collect()
            })
            .collect();
        for coord in 1..=code.dims[node - 1] {
            let mut target = vec![0u32; width];
            target[code.column(node, coord)] = 1;
            let Some(alpha) = matrix::solve_left(f, &masked, &target) else {
                return Ok(Validity {
                    valid: false,
                    certificate: None,
                    failure: Some((node, coord)),
                });
            };
            let full = matrix::combine(f, &alpha, &code.rows, width);
            let gamma = (0..width)
                .filter(|&c| side[c] && full[c] != 0)
                .map(|c| {
                    let (node, coord) = code.column_owner(c);
                    SideTerm {
                        node,
                        coord,
                        coeff: full[c],
                    }
                })
                .collect();
            decoders.push(Decoder {
                node,
                coord,
                alpha,
                gamma,
            });
        }
    }
    Ok(Validity {
        valid: true,
        certificate: Some(DecodingCertificate { decoders }),
        failure: None,
    })
}

/// Re-checks a certificate from scratch: every symbol has a decoder whose
/// combination of the transmitted rows equals the claimed expression and
/// whose side terms are all known to the node.
pub fn verify_certificate(g: &DiGraph, code: &LinearIndexCode, cert: &DecodingCertificate) -> bool {
    if check_layout(g, code).is_err() {
        return false;
    }
    let f = code.field;
    let width = code.width();
    for node in g.vertices() {
        for coord in 1..=code.dims[node - 1] {
            let Some(d) = cert
                .decoders
                .iter()
                .find(|d| d.node == node && d.coord == coord)
            else {
                return false;
            };
            if d.alpha.len() != code.length() {
                return false;
            }
            let mut expect = vec![0u32; width];
            expect[code.column(node, coord)] = 1;
            for t in &d.gamma {
                if !g.has_edge(node, t.node) || t.coord == 0 || t.coord > code.dims[t.node - 1] {
                    return false;
                }
                let c = code.column(t.node, t.coord);
                expect[c] = f.add(expect[c], t.coeff);
            }
            if matrix::combine(f, &d.alpha, &code.rows, width) != expect {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::field::GF2;
    use super::*;
    use crate::scalar::ratio;

    fn code(dims: Vec<usize>, rows: Matrix) -> LinearIndexCode {
        LinearIndexCode::new(GF2, dims, rows).unwrap()
    }

    #[test]
    fn xor_on_k3_is_valid() {
        let c = code(vec![1, 1, 1], vec![vec![1, 1, 1]]);
        let v = is_valid_linear_code(&DiGraph::complete(3), &c).unwrap();
        assert!(v.valid);
        assert!(verify_certificate(&DiGraph::complete(3), &c, v.certificate.as_ref().unwrap()));
        assert_eq!(c.symmetric_rate(), Some(int(1)));
    }

    #[test]
    fn identity_always_valid() {
        let c = code(vec![1; 4], matrix::identity(4));
        assert!(is_valid_linear_code(&DiGraph::new(4), &c).unwrap().valid);
    }

    #[test]
    fn xor_without_side_information_fails() {
        let c = code(vec![1, 1], vec![vec![1, 1]]);
        let v = is_valid_linear_code(&DiGraph::new(2), &c).unwrap();
        assert!(!v.valid);
        assert_eq!(v.failure, Some((1, 1)));
    }

    #[test]
    fn forged_certificate_rejected() {
        let g = DiGraph::complete(3);
        let c = code(vec![1, 1, 1], vec![vec![1, 1, 1]]);
        let mut cert = is_valid_linear_code(&g, &c).unwrap().certificate.unwrap();
        cert.decoders[0].gamma.pop();
        assert!(!verify_certificate(&g, &c, &cert));
        // side term on a message the node does not know
        let line = DiGraph::from_edges(3, [(1, 2), (2, 1), (3, 1), (3, 2)]).unwrap();
        let c2 = code(vec![1, 1, 1], matrix::identity(3));
        let mut cert = is_valid_linear_code(&line, &c2).unwrap().certificate.unwrap();
        cert.decoders[0].gamma.push(SideTerm { node: 3, coord: 1, coeff: 0 });
        assert!(!verify_certificate(&line, &c2, &cert));
    }

    #[test]
    fn dimension_mismatch() {
        let c = code(vec![1, 1], vec![vec![1, 1]]);
        assert!(matches!(
            is_valid_linear_code(&DiGraph::new(3), &c),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(LinearIndexCode::new(GF2, vec![2], vec![vec![1]]).is_err());
        assert!(LinearIndexCode::new(GF2, vec![1], vec![vec![2]]).is_err());
    }

    #[test]
    fn echelon_examples() {
        let c = code(vec![1, 1, 1], vec![vec![1, 1, 0], vec![1, 1, 1]]);
        let (e, _) = row_reduce(&c);
        assert_eq!(e.code.rows(), &vec![vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(e.pivots, vec![(1, 1), (3, 1)]);

        let id = code(vec![1; 3], matrix::identity(3));
        assert_eq!(row_reduce(&id).0.code, id);

        let z = code(vec![1, 1], vec![vec![0, 0]]);
        let (e, _) = row_reduce(&z);
        assert!(e.pivots.is_empty());
        assert_eq!(e.code, z);
    }

    #[test]
    fn columns_and_rates() {
        let c = LinearIndexCode::new(GF2, vec![2, 1, 1], vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        assert_eq!(c.column(2, 1), 2);
        assert_eq!(c.column_owner(1), (1, 2));
        assert_eq!(c.column_owner(3), (3, 1));
        assert_eq!(c.rates().rates, vec![int(1), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(c.symmetric_rate(), None);
    }

    #[test]
    fn text_and_json_roundtrip() {
        let c = LinearIndexCode::new(
            PrimeField::new(3).unwrap(),
            vec![2, 1],
            vec![vec![1, 2, 0], vec![0, 1, 1]],
        )
        .unwrap();
        let text = write_code(&c);
        assert_eq!(text, "3 2 2\ndims 2 1\n1 2 0\n0 1 1\n");
        assert_eq!(parse_code(&text).unwrap(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(parse_code_any(&json).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_code("4 1 1\ndims 1\n1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_code("2 1 1\ndims 1\n2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_code("2 2 1\ndims 1\n1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_code("2 1 2\ndims 1\n1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
