use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bits::Bits;
use super::graph::{build_confusion_graph_with, ConfusionGraph};
use super::table::{find_apex_coset_code, verify_code, CodeTable};
use super::AlphabetSpec;
use crate::error::{check_limit, Error, Result};
use crate::graph::DiGraph;
use crate::limits::Limits;

const NONE: usize = usize::MAX;

struct Budget {
    what: &'static str,
    left: u64,
    total: u64,
}

impl Budget {
    fn new(what: &'static str, total: u64) -> Self {
        Budget {
            what,
            left: total,
            total,
        }
    }

    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::SearchBudgetExceeded {
                what: self.what,
                budget: self.total,
            });
        }
        self.left -= 1;
        Ok(())
    }
}

fn induced_rows(rows: &[Bits], vertices: &[usize]) -> Vec<Bits> {
    let s = vertices.len();
    vertices
        .iter()
        .map(|&a| Bits::from_indices(s, (0..s).filter(|&y| rows[a].get(vertices[y]))))
        .collect()
}

fn complement_rows(rows: &[Bits]) -> Vec<Bits> {
    let full = Bits::full(rows.len());
    rows.iter()
        .enumerate()
        .map(|(a, r)| {
            let mut c = full.and_not(r);
            c.clear(a);
            c
        })
        .collect()
}

/// Connected components of the complement; the graph is the join of them.
fn join_blocks(rows: &[Bits]) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut unvisited = Bits::full(n);
    let mut blocks = Vec::new();
    while let Some(start) = unvisited.first() {
        unvisited.clear(start);
        let mut block = vec![start];
        let mut head = 0;
        while head < block.len() {
            let v = block[head];
            head += 1;
            let next = unvisited.and_not(&rows[v]);
            for u in next.ones() {
                unvisited.clear(u);
                block.push(u);
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Branch and bound with greedy-coloring bounds over bit rows.
fn clique_search(rows: &[Bits], budget: &mut Budget) -> Result<Vec<usize>> {
    let n = rows.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(rows[v].count()), v));
    let local = induced_rows(rows, &order);
    let mut best = vec![0];
    let mut cur = Vec::new();
    expand(&local, &mut cur, Bits::full(n), &mut best, budget)?;
    let mut out: Vec<usize> = best.into_iter().map(|x| order[x]).collect();
    out.sort_unstable();
    Ok(out)
}

fn expand(
    rows: &[Bits],
    cur: &mut Vec<usize>,
    mut p: Bits,
    best: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    let mut order = Vec::new();
    let mut bound = Vec::new();
    let mut uncolored = p.clone();
    let mut k = 0;
    while !uncolored.is_empty() {
        k += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.clear(v);
            q.subtract(&rows[v]);
            uncolored.clear(v);
            order.push(v);
            bound.push(k);
        }
    }
    for idx in (0..order.len()).rev() {
        if cur.len() + bound[idx] <= best.len() {
            return Ok(());
        }
        let v = order[idx];
        cur.push(v);
        let np = p.and(&rows[v]);
        if np.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(rows, cur, np, best, budget)?;
        }
        cur.pop();
        p.clear(v);
    }
    Ok(())
}

/// DSATUR heuristic; returns colors `0..k` per vertex.
fn dsatur(rows: &[Bits]) -> Vec<usize> {
    let n = rows.len();
    let deg: Vec<usize> = rows.iter().map(Bits::count).collect();
    let mut color = vec![NONE; n];
    let mut seen: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NONE)
            .max_by_key(|&v| (sat[v], deg[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..)
            .find(|&c| seen[v].get(c / 64).map_or(true, |w| w >> (c % 64) & 1 == 0))
            .expect("some color is free");
        color[v] = c;
        for u in rows[v].ones() {
            if color[u] != NONE {
                continue;
            }
            let s = &mut seen[u];
            if s.len() <= c / 64 {
                s.resize(c / 64 + 1, 0);
            }
            if s[c / 64] >> (c % 64) & 1 == 0 {
                s[c / 64] |= 1 << (c % 64);
                sat[u] += 1;
            }
        }
    }
    color
}

/// Tabu search for a proper k-coloring, started from `init` with colors
/// at or above `k` folded back into range.
fn tabucol(rows: &[Bits], k: usize, init: &[usize], max_iter: u64) -> Option<Vec<usize>> {
    let n = rows.len();
    let adj: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab0 ^ (n as u64) << 16 ^ k as u64);
    let mut color: Vec<usize> = init.iter().map(|&c| c % k).collect();
    let mut gamma = vec![vec![0u32; k]; n];
    for v in 0..n {
        for &u in &adj[v] {
            gamma[v][color[u]] += 1;
        }
    }
    let mut conflicts: i64 = (0..n).map(|v| gamma[v][color[v]] as i64).sum::<i64>() / 2;
    let mut best = conflicts;
    let mut tabu = vec![vec![0u64; k]; n];
    for iter in 0..max_iter {
        if conflicts == 0 {
            return Some(color);
        }
        let mut moves = Vec::new();
        let mut best_delta = i64::MAX;
        let mut conflicted = 0;
        for v in 0..n {
            let own = gamma[v][color[v]] as i64;
            if own == 0 {
                continue;
            }
            conflicted += 1;
            for c in (0..k).filter(|&c| c != color[v]) {
                let delta = gamma[v][c] as i64 - own;
                if tabu[v][c] > iter && conflicts + delta >= best {
                    continue;
                }
                if delta < best_delta {
                    best_delta = delta;
                    moves.clear();
                }
                if delta == best_delta {
                    moves.push((v, c));
                }
            }
        }
        if moves.is_empty() {
            continue;
        }
        let (v, c) = moves[rng.gen_range(0..moves.len())];
        let old = color[v];
        tabu[v][old] = iter + rng.gen_range(0..10) + (0.6 * conflicted as f64) as u64;
        color[v] = c;
        for &u in &adj[v] {
            gamma[u][old] -= 1;
            gamma[u][c] += 1;
        }
        conflicts += best_delta;
        best = best.min(conflicts);
    }
    (conflicts == 0).then_some(color)
}

/// Exact k-colorability by DSATUR-ordered backtracking. New colors are
/// opened one at a time, and a maximum clique is fixed to the first colors.
struct KColor<'a> {
    rows: &'a [Bits],
    k: usize,
    color: Vec<usize>,
    counts: Vec<Vec<u32>>,
    sat: Vec<usize>,
    deg: Vec<usize>,
}

impl<'a> KColor<'a> {
    fn new(rows: &'a [Bits], k: usize) -> Self {
        let n = rows.len();
        KColor {
            rows,
            k,
            color: vec![NONE; n],
            counts: vec![vec![0; k]; n],
            sat: vec![0; n],
            deg: rows.iter().map(Bits::count).collect(),
        }
    }

    /// Assigns and reports whether some uncolored neighbor lost all colors.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        let mut dead = false;
        for u in self.rows[v].ones() {
            self.counts[u][c] += 1;
            if self.counts[u][c] == 1 {
                self.sat[u] += 1;
                if self.color[u] == NONE && self.sat[u] == self.k {
                    dead = true;
                }
            }
        }
        dead
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        for u in self.rows[v].ones() {
            self.counts[u][c] -= 1;
            if self.counts[u][c] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn run(&mut self, clique: &[usize], budget: &mut Budget) -> Result<Option<Vec<usize>>> {
        if clique.len() > self.k {
            return Ok(None);
        }
        for (c, &v) in clique.iter().enumerate() {
            if self.assign(v, c) {
                return Ok(None);
            }
        }
        let done = self.dfs(clique.len(), clique.len(), budget)?;
        Ok(done.then(|| self.color.clone()))
    }

    fn dfs(&mut self, colored: usize, used: usize, budget: &mut Budget) -> Result<bool> {
        let n = self.rows.len();
        if colored == n {
            return Ok(true);
        }
        budget.tick()?;
        let v = (0..n)
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.sat[v], self.deg[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        for c in 0..self.k.min(used + 1) {
            if self.counts[v][c] != 0 {
                continue;
            }
            let dead = self.assign(v, c);
            if !dead && self.dfs(colored + 1, used.max(c + 1), budget)? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}

/// Bounds for one join block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockBound {
    pub vertices: usize,
    pub clique: usize,
    pub independence: Option<usize>,
    pub lower: usize,
    pub upper: usize,
}

impl BlockBound {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Chromatic-number interval with a proper coloring achieving `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringBounds {
    pub lower: usize,
    pub upper: usize,
    /// Color in `0..upper` for each vertex rank.
    pub coloring: Vec<usize>,
    pub blocks: Vec<BlockBound>,
}

impl ColoringBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Adopts a verified explicit code when it beats the search's coloring.
    pub fn tighten_with(&mut self, code: &CodeTable) -> bool {
        if code.symbols().len() != self.coloring.len()
            || code.n_symbols() >= self.upper
            || !verify_code(code).valid
        {
            return false;
        }
        self.upper = code.n_symbols();
        self.coloring = code.symbols().iter().map(|s| s - 1).collect();
        true
    }
}

/// `seed` is an optional proper coloring tried before DSATUR.
fn color_block(rows: &[Bits], limits: &Limits, seed: Option<Vec<usize>>) -> (BlockBound, Vec<usize>) {
    let s = rows.len();
    let colors_of = |c: &[usize]| c.iter().max().map_or(0, |&c| c + 1);
    let mut coloring = dsatur(rows);
    if let Some(seed) = seed.filter(|c| colors_of(c) < colors_of(&coloring)) {
        coloring = seed;
    }
    let mut upper = colors_of(&coloring);
    let mut budget = Budget::new("chromatic number", limits.coloring_budget);
    let clique = clique_search(rows, &mut budget).ok();
    let omega = clique.as_ref().map_or(s.min(1), Vec::len);
    let mut bound = BlockBound {
        vertices: s,
        clique: omega,
        independence: None,
        lower: omega,
        upper,
    };
    if bound.lower == upper {
        return (bound, coloring);
    }
    if s <= limits.mis_max_vertices {
        let mut mis_budget = Budget::new("independent set", limits.coloring_budget);
        if let Ok(mis) = clique_search(&complement_rows(rows), &mut mis_budget) {
            bound.independence = Some(mis.len());
            bound.lower = bound.lower.max(s.div_ceil(mis.len()));
        }
    }
    while bound.lower < upper {
        match tabucol(rows, upper - 1, &coloring, limits.tabu_iterations) {
            Some(c) => {
                coloring = c;
                upper -= 1;
            }
            None => break,
        }
    }
    if bound.lower == upper {
        bound.upper = upper;
        return (bound, coloring);
    }
    if bound.lower < upper && s <= limits.exact_coloring_block {
        let clique = clique.unwrap_or_default();
        let mut k = bound.lower;
        while k < upper {
            match KColor::new(rows, k).run(&clique, &mut budget) {
                Ok(Some(c)) => {
                    coloring = c;
                    upper = k;
                }
                Ok(None) => {
                    k += 1;
                    bound.lower = k;
                }
                Err(_) => break,
            }
        }
    }
    bound.upper = upper;
    (bound, coloring)
}

/// Colors of `coloring` on `block`, renumbered from 0 in first-use order.
fn restrict(coloring: &[usize], block: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    block
        .iter()
        .map(|&v| {
            let next = map.len();
            *map.entry(coloring[v]).or_insert(next)
        })
        .collect()
}

/// Interval for the chromatic number. Blocks of the join decomposition are
/// bounded separately and their colors shifted apart. A valid apex coset
/// code, when one exists, seeds every block.
pub fn chromatic_bounds(cg: &ConfusionGraph, limits: &Limits) -> ColoringBounds {
    let rows = cg.rows();
    let mut out = ColoringBounds {
        lower: 0,
        upper: 0,
        coloring: vec![0; rows.len()],
        blocks: Vec::new(),
    };
    let seed: Option<Vec<usize>> = find_apex_coset_code(cg.base(), cg.spec(), limits)
        .map(|code| code.symbols().iter().map(|s| s - 1).collect());
    for block in join_blocks(rows) {
        let local = induced_rows(rows, &block);
        let block_seed = seed.as_ref().map(|c| restrict(c, &block));
        let (b, colors) = color_block(&local, limits, block_seed);
        for (x, &v) in block.iter().enumerate() {
            out.coloring[v] = out.upper + colors[x];
        }
        out.lower += b.lower;
        out.upper += b.upper;
        out.blocks.push(b);
    }
    out
}

/// Exact chromatic number with an optimal coloring.
pub fn chromatic_number(cg: &ConfusionGraph) -> Result<(usize, Vec<usize>)> {
    let limits = Limits::default();
    let b = chromatic_bounds(cg, &limits);
    if b.is_exact() {
        return Ok((b.upper, b.coloring));
    }
    match b.blocks.iter().find(|x| !x.is_exact()) {
        Some(x) if x.vertices > limits.exact_coloring_block => Err(Error::SizeLimitExceeded {
            what: "exact coloring block",
            size: x.vertices,
            limit: limits.exact_coloring_block,
        }),
        _ => Err(Error::SearchBudgetExceeded {
            what: "chromatic number",
            budget: limits.coloring_budget,
        }),
    }
}

pub fn max_clique(cg: &ConfusionGraph, limits: &Limits) -> Result<Vec<usize>> {
    clique_search(
        cg.rows(),
        &mut Budget::new("maximum clique", limits.coloring_budget),
    )
}

pub fn max_independent_set(cg: &ConfusionGraph, limits: &Limits) -> Result<Vec<usize>> {
    check_limit(
        "independent set search",
        cg.vertex_count(),
        limits.mis_max_vertices,
    )?;
    clique_search(
        &complement_rows(cg.rows()),
        &mut Budget::new("independent set", limits.coloring_budget),
    )
}

/// Largest set of pairwise non-confusable tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinguishable {
    pub size: usize,
    pub ranks: Vec<usize>,
    pub witness: Vec<Vec<usize>>,
}

pub fn max_distinguishable_family(cg: &ConfusionGraph) -> Result<Distinguishable> {
    let ranks = max_independent_set(cg, &Limits::default())?;
    Ok(Distinguishable {
        size: ranks.len(),
        witness: ranks.iter().map(|&k| cg.tuple(k)).collect(),
        ranks,
    })
}

pub fn min_oneshot_bounds(
    base: &DiGraph,
    spec: &AlphabetSpec,
    limits: &Limits,
) -> Result<ColoringBounds> {
    let cg = build_confusion_graph_with(base, spec, limits)?;
    Ok(chromatic_bounds(&cg, limits))
}

/// Smallest public alphabet of a zero-error one-shot code.
pub fn min_oneshot_size(base: &DiGraph, spec: &AlphabetSpec) -> Result<usize> {
    let cg = build_confusion_graph_with(base, spec, &Limits::default())?;
    chromatic_number(&cg).map(|(k, _)| k)
}
