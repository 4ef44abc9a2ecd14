use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::coloring::max_independent_set;
use super::graph::build_confusion_graph_with;
use super::AlphabetSpec;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::graph::text::{content_lines, parse_usize};
use crate::graph::DiGraph;

/// Explicit one-shot code: a public symbol in `1..=N` for every tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeTable {
    spec: AlphabetSpec,
    base: DiGraph,
    n_symbols: usize,
    symbols: Vec<usize>,
}

impl CodeTable {
    /// `symbols[k]` is the symbol of the tuple of rank `k`.
    pub fn new(
        base: &DiGraph,
        spec: &AlphabetSpec,
        n_symbols: usize,
        symbols: Vec<usize>,
    ) -> Result<Self> {
        if spec.len() != base.n() {
            return Err(Error::DimensionMismatch(format!(
                "alphabet has {} sizes for {} vertices",
                spec.len(),
                base.n()
            )));
        }
        if n_symbols == 0 {
            return Err(Error::InvalidCode("N must be at least 1".into()));
        }
        if symbols.len() != spec.tuple_count() {
            return Err(Error::InvalidCode(format!(
                "table has {} entries for {} tuples",
                symbols.len(),
                spec.tuple_count()
            )));
        }
        if let Some(k) = symbols.iter().position(|&s| s == 0 || s > n_symbols) {
            return Err(Error::InvalidCode(format!(
                "symbol {} of tuple {:?} is outside 1..={n_symbols}",
                symbols[k],
                spec.unrank(k)
            )));
        }
        Ok(CodeTable {
            spec: spec.clone(),
            base: base.clone(),
            n_symbols,
            symbols,
        })
    }

    /// Tabulates `f`, which must return symbols starting from 1.
    pub fn from_fn(
        base: &DiGraph,
        spec: &AlphabetSpec,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<Self> {
        let symbols: Vec<usize> = spec.tuples().map(|w| f(&w)).collect();
        let n = symbols.iter().copied().max().unwrap_or(1);
        CodeTable::new(base, spec, n, symbols)
    }

    /// Code from a coloring with colors counted from 0.
    pub fn from_coloring(base: &DiGraph, spec: &AlphabetSpec, coloring: &[usize]) -> Result<Self> {
        let symbols: Vec<usize> = coloring.iter().map(|c| c + 1).collect();
        let n = symbols.iter().copied().max().unwrap_or(1);
        CodeTable::new(base, spec, n, symbols)
    }

    pub fn spec(&self) -> &AlphabetSpec {
        &self.spec
    }

    pub fn base(&self) -> &DiGraph {
        &self.base
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn symbol(&self, w: &[usize]) -> Result<usize> {
        self.spec.check_tuple(w)?;
        Ok(self.symbols[self.spec.rank(w)])
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            n_symbols: self.n_symbols,
            sizes: self.spec.sizes().to_vec(),
            symbols: self.symbols.clone(),
        }
    }
}

/// JSON mirror of the table file; symbols are listed in rank order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(rename = "N")]
    pub n_symbols: usize,
    pub sizes: Vec<usize>,
    pub symbols: Vec<usize>,
}

/// Two tuples sharing a symbol that `node` cannot tell apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub node: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeCheck {
    pub valid: bool,
    pub n_symbols: usize,
    pub violation: Option<Violation>,
}

/// Checks every node by hashing (symbol, side information). The reported
/// violation is the first found scanning nodes, then tuples, in order.
pub fn verify_code(code: &CodeTable) -> CodeCheck {
    let spec = &code.spec;
    for i in code.base.vertices() {
        let side = code.base.out_neighbors(i);
        let mut seen: HashMap<(usize, Vec<usize>), (usize, usize)> = HashMap::new();
        for (k, w) in spec.tuples().enumerate() {
            let key = (code.symbols[k], side.iter().map(|&j| w[j - 1]).collect());
            match seen.get(&key) {
                Some(&(first, value)) if value != w[i - 1] => {
                    return CodeCheck {
                        valid: false,
                        n_symbols: code.n_symbols,
                        violation: Some(Violation {
                            a: spec.unrank(first),
                            b: w,
                            node: i,
                        }),
                    };
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (k, w[i - 1]));
                }
            }
        }
    }
    CodeCheck {
        valid: true,
        n_symbols: code.n_symbols,
        violation: None,
    }
}

/// Parses `N <int>` followed by `w_1 ... w_n -> symbol` lines. Alphabet
/// sizes are read off the largest value seen in each coordinate.
pub fn parse_table(text: &str, base: &DiGraph) -> Result<CodeTable> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty code table"))?;
    let n_symbols = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["N", n] => parse_usize(hl, n, "symbol count")?,
        _ => return Err(Error::parse(hl, "expected header 'N <int>'")),
    };
    let mut entries = Vec::new();
    for (lineno, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::parse(lineno, "expected 'w_1 ... w_n -> symbol'"))?;
        let w = lhs
            .split_whitespace()
            .map(|t| parse_usize(lineno, t, "message value"))
            .collect::<Result<Vec<_>>>()?;
        if w.len() != base.n() {
            return Err(Error::parse(
                lineno,
                format!("tuple has {} entries for {} vertices", w.len(), base.n()),
            ));
        }
        let s = parse_usize(lineno, rhs.trim(), "symbol")?;
        entries.push((lineno, w, s));
    }
    let sizes: Vec<usize> = (0..base.n())
        .map(|i| entries.iter().map(|(_, w, _)| w[i] + 1).max().unwrap_or(1))
        .collect();
    let spec = AlphabetSpec::new(sizes).map_err(|e| Error::parse(hl, e.to_string()))?;
    let mut slots: Vec<Option<usize>> = vec![None; spec.tuple_count()];
    for (lineno, w, s) in &entries {
        let slot = &mut slots[spec.rank(w)];
        if slot.is_some() {
            return Err(Error::parse(*lineno, format!("tuple {w:?} listed twice")));
        }
        *slot = Some(*s);
    }
    let symbols = slots
        .iter()
        .enumerate()
        .map(|(k, s)| {
            s.ok_or_else(|| Error::parse(hl, format!("tuple {:?} has no entry", spec.unrank(k))))
        })
        .collect::<Result<Vec<_>>>()?;
    CodeTable::new(base, &spec, n_symbols, symbols).map_err(|e| Error::parse(hl, e.to_string()))
}

/// Accepts the text format or its JSON mirror.
pub fn parse_table_any(text: &str, base: &DiGraph) -> Result<CodeTable> {
    if text.trim_start().starts_with('{') {
        let j: TableJson =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let spec = AlphabetSpec::new(j.sizes).map_err(|e| Error::parse(1, e.to_string()))?;
        CodeTable::new(base, &spec, j.n_symbols, j.symbols)
            .map_err(|e| Error::parse(1, e.to_string()))
    } else {
        parse_table(text, base)
    }
}

pub fn write_table(code: &CodeTable) -> String {
    let mut out = format!("N {}\n", code.n_symbols);
    for (k, w) in code.spec.tuples().enumerate() {
        let tuple: Vec<String> = w.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{} -> {}", tuple.join(" "), code.symbols[k]);
    }
    out
}

/// Pairwise distinguishable masks on the bidirectional 5-cycle.
pub const C5_MASKS: [[usize; 5]; 5] = [
    [0, 0, 0, 0, 0],
    [1, 0, 0, 0, 1],
    [0, 1, 1, 1, 1],
    [0, 1, 1, 0, 0],
    [1, 0, 1, 1, 1],
];

/// Bidirectional 5-cycle on 1..5 plus a sixth node that knows all of them.
pub fn c5_with_apex() -> DiGraph {
    let cycle = DiGraph::bidirectional_cycle(5).edges();
    let apex = (1..=5).map(|v| (6, v));
    DiGraph::from_edges(6, cycle.into_iter().chain(apex)).expect("valid edges")
}

/// Sends `(w_1..w_5) XOR mask[w_6]` as a 5-bit symbol.
pub fn fig5_mask_code() -> (DiGraph, AlphabetSpec, CodeTable) {
    let g = c5_with_apex();
    let spec = AlphabetSpec::new(vec![2, 2, 2, 2, 2, 5]).expect("160 tuples");
    let masks: Vec<Vec<usize>> = C5_MASKS.iter().map(|m| m.to_vec()).collect();
    let code = apex_coset_code(&g, &spec, 6, &masks).expect("node 6 knows all");
    (g, spec, code)
}

/// Code for a node `z` that knows every other message: send the other
/// coordinates minus `masks[w_z]`, modulo the alphabet sizes. The symbol is
/// one plus the mixed-radix rank of that difference. Confusability depends
/// only on the difference of two tuples, so the code is valid when the
/// masks are pairwise non-confusable on `g - z`.
pub fn apex_coset_code(
    base: &DiGraph,
    spec: &AlphabetSpec,
    z: usize,
    masks: &[Vec<usize>],
) -> Result<CodeTable> {
    let n = base.n();
    if z == 0 || z > n {
        return Err(Error::VertexOutOfRange { vertex: z, n });
    }
    if spec.len() != n || n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "apex code needs at least two nodes and one size per node, got {} sizes for {n}",
            spec.len()
        )));
    }
    if base.out_neighbors(z).len() != n - 1 {
        return Err(Error::InvalidParams(format!("node {z} does not know every message")));
    }
    let mut rest = spec.sizes().to_vec();
    let sz = rest.remove(z - 1);
    if masks.len() != sz {
        return Err(Error::DimensionMismatch(format!(
            "node {z} has alphabet {sz} but {} masks were given",
            masks.len()
        )));
    }
    if let Some(m) = masks
        .iter()
        .find(|m| m.len() != n - 1 || m.iter().zip(&rest).any(|(x, s)| x >= s))
    {
        return Err(Error::DimensionMismatch(format!("mask {m:?} does not fit sizes {rest:?}")));
    }
    let n_symbols = rest.iter().product();
    let code = CodeTable::from_fn(base, spec, |w| {
        let mask = &masks[w[z - 1]];
        let others = (0..n).filter(|&i| i != z - 1);
        1 + others
            .zip(mask)
            .zip(&rest)
            .fold(0, |acc, ((i, &m), &s)| acc * s + (w[i] + s - m) % s)
    })?;
    CodeTable::new(base, spec, n_symbols, code.symbols)
}

/// Smallest valid [`apex_coset_code`] over all nodes that know every other
/// message, with masks taken from a maximum independent set of the
/// remaining graph's confusion graph.
pub fn find_apex_coset_code(
    base: &DiGraph,
    spec: &AlphabetSpec,
    limits: &Limits,
) -> Option<CodeTable> {
    let n = base.n();
    let mut best: Option<CodeTable> = None;
    for z in (1..=n).filter(|&z| n >= 2 && base.out_neighbors(z).len() == n - 1) {
        let others: Vec<usize> = (1..=n).filter(|&v| v != z).collect();
        let Ok(g) = base.induced(&others) else { continue };
        let mut rest = spec.sizes().to_vec();
        let sz = rest.remove(z - 1);
        let Ok(sub) = AlphabetSpec::with_limit(rest, limits.max_tuples) else {
            continue;
        };
        if best.as_ref().is_some_and(|b| b.n_symbols() <= sub.tuple_count()) {
            continue;
        }
        let Ok(cg) = build_confusion_graph_with(&g, &sub, limits) else {
            continue;
        };
        let Ok(mis) = max_independent_set(&cg, limits) else { continue };
        if mis.len() < sz {
            continue;
        }
        let masks: Vec<Vec<usize>> = mis[..sz].iter().map(|&k| sub.unrank(k)).collect();
        if let Ok(code) = apex_coset_code(base, spec, z, &masks) {
            if verify_code(&code).valid {
                best = Some(code);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confusion::{build_confusion_graph, confusable};

    #[test]
    fn c5_apex_mask_code_is_valid() {
        let (g, spec, code) = fig5_mask_code();
        assert_eq!(code.n_symbols(), 32);
        let check = verify_code(&code);
        assert!(check.valid, "{check:?}");
        for w in spec.tuples().filter(|w| w[5] == 0) {
            let expect = 1 + w[..5].iter().fold(0, |a, &b| 2 * a + b);
            assert_eq!(code.symbol(&w).unwrap(), expect);
        }
        let a = [0, 0, 0, 0, 0, 1];
        let b = [1, 0, 0, 0, 1, 0];
        assert_eq!(code.symbol(&a).unwrap(), code.symbol(&b).unwrap());
        assert!(!confusable(&g, &spec, &a, &b).unwrap());
    }

    #[test]
    fn apex_search_finds_mask_code_size() {
        let (g, spec, _) = fig5_mask_code();
        let code = find_apex_coset_code(&g, &spec, &Limits::default()).unwrap();
        assert_eq!(code.n_symbols(), 32);
        assert!(verify_code(&code).valid);
        let k3 = DiGraph::complete(3);
        let spec = AlphabetSpec::new(vec![3, 3, 2]).unwrap();
        let code = find_apex_coset_code(&k3, &spec, &Limits::default()).unwrap();
        assert!(verify_code(&code).valid);
        assert_eq!(code.n_symbols(), 9);
        assert!(find_apex_coset_code(&DiGraph::directed_cycle(3), &spec, &Limits::default()).is_none());
    }

    #[test]
    fn apex_code_rejects_bad_masks() {
        let (g, spec, _) = fig5_mask_code();
        assert!(apex_coset_code(&g, &spec, 1, &[]).is_err());
        assert!(apex_coset_code(&g, &spec, 6, &[vec![0; 5]]).is_err());
        assert!(apex_coset_code(&g, &spec, 6, &vec![vec![2, 0, 0, 0, 0]; 5]).is_err());
    }

    #[test]
    fn constant_code_on_k2_fails() {
        let k2 = DiGraph::complete(2);
        let spec = AlphabetSpec::binary(2);
        let code = CodeTable::from_fn(&k2, &spec, |_| 1).unwrap();
        let check = verify_code(&code);
        assert!(!check.valid);
        let v = check.violation.unwrap();
        assert!(confusable(&k2, &spec, &v.a, &v.b).unwrap());
        assert_ne!(v.a[v.node - 1], v.b[v.node - 1]);
    }

    #[test]
    fn identity_code_is_valid() {
        let g = DiGraph::new(3);
        let spec = AlphabetSpec::new(vec![2, 3, 2]).unwrap();
        let code = CodeTable::from_fn(&g, &spec, |w| spec.rank(w) + 1).unwrap();
        assert!(verify_code(&code).valid);
    }

    #[test]
    fn verify_matches_preimage_independence() {
        let c5 = DiGraph::bidirectional_cycle(5);
        let spec = AlphabetSpec::binary(5);
        let cg = build_confusion_graph(&c5, &spec).unwrap();
        for modulus in 5..12 {
            let code = CodeTable::from_fn(&c5, &spec, |w| spec.rank(w) % modulus + 1).unwrap();
            let independent = (1..=modulus).all(|s| {
                let pre: Vec<usize> = (0..32).filter(|&k| code.symbols()[k] == s).collect();
                cg.is_independent(&pre)
            });
            assert_eq!(verify_code(&code).valid, independent);
        }
    }

    #[test]
    fn text_and_json_roundtrip() {
        let (g, _, code) = fig5_mask_code();
        let text = write_table(&code);
        assert!(text.starts_with("N 32\n0 0 0 0 0 0 -> 1\n"));
        assert_eq!(parse_table(&text, &g).unwrap(), code);
        let json = serde_json::to_string(&code.to_json()).unwrap();
        assert_eq!(parse_table_any(&json, &g).unwrap(), code);
    }

    #[test]
    fn table_parse_errors() {
        let g = DiGraph::new(1);
        let err = parse_table("N 2\n0 -> 1\n1 -> 3\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_table("N 2\n0 -> 1\n0 -> 2\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_table("N 2\n0 -> 1\n2 -> 2\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_table("N 2\n0 1 -> 1\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_table("M 2\n", &g).is_err());
    }
}
