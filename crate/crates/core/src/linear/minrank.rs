use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::code::LinearIndexCode;
use super::field::GF2;
use crate::bounds::{clique_cover_number, cycle_cover_bound};
use crate::error::{check_limit, Error, Result};
use crate::graph::{mais, DiGraph};
use crate::limits::Limits;

/// Result of the GF(2) minrank search with a fitting matrix attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minrank {
    pub rank: usize,
    /// Row `i` has a one at column `i`, and zeros outside `i`'s out-neighborhood.
    pub matrix: Vec<Vec<u32>>,
    pub nodes_explored: u64,
}

impl Minrank {
    /// Scalar linear code spanned by the fitting matrix rows.
    pub fn code(&self) -> LinearIndexCode {
        let n = self.matrix.len();
        let mut basis = XorBasis::default();
        let mut rows = Vec::new();
        for row in &self.matrix {
            let mask = row
                .iter()
                .enumerate()
                .fold(0u64, |m, (k, &b)| m | (u64::from(b) << k));
            if basis.insert(mask) {
                rows.push(row.clone());
            }
        }
        LinearIndexCode::new(GF2, vec![1; n], rows).expect("0/1 rows of width n")
    }
}

/// GF(2) vectors kept in reduced form keyed by their highest bit.
#[derive(Clone)]
struct XorBasis {
    by_top: [u64; 64],
    len: usize,
}

impl Default for XorBasis {
    fn default() -> Self {
        XorBasis {
            by_top: [0; 64],
            len: 0,
        }
    }
}

impl XorBasis {
    /// Coset representative of `v`: every leading bit of the basis cleared.
    fn canonical(&self, mut v: u64) -> u64 {
        let mut bits = v;
        while bits != 0 {
            let top = 63 - bits.leading_zeros() as usize;
            bits &= !(1 << top);
            if v >> top & 1 == 1 && self.by_top[top] != 0 {
                v ^= self.by_top[top];
                bits = v & ((1u64 << top) - 1);
            }
        }
        v
    }

    /// Adds `v`; returns false if it was already in the span.
    fn insert(&mut self, v: u64) -> bool {
        let r = self.canonical(v);
        if r == 0 {
            return false;
        }
        self.insert_reduced(r);
        true
    }

    /// Adds a nonzero canonical vector and returns its leading bit.
    fn insert_reduced(&mut self, r: u64) -> usize {
        let top = 63 - r.leading_zeros() as usize;
        self.by_top[top] = r;
        self.len += 1;
        top
    }

    fn remove_top(&mut self, top: usize) {
        self.by_top[top] = 0;
        self.len -= 1;
    }
}

fn rows_to_matrix(rows: &[u64], n: usize) -> Vec<Vec<u32>> {
    rows.iter()
        .map(|&r| (0..n).map(|k| (r >> k & 1) as u32).collect())
        .collect()
}

fn rank_of(rows: &[u64]) -> usize {
    let mut b = XorBasis::default();
    rows.iter().filter(|&&r| b.insert(r)).count()
}

/// Fitting matrix from a clique partition: every member of a clique gets
/// the clique's indicator row.
fn clique_matrix(parts: &[Vec<usize>], n: usize) -> Vec<u64> {
    let mut rows = vec![0u64; n];
    for p in parts {
        let mask = p.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
        for &v in p {
            rows[v - 1] = mask;
        }
    }
    rows
}

/// Fitting matrix from a cycle cover: `e_v + e_next(v)` along each cycle.
fn cycle_matrix(cycles: &[Vec<usize>], n: usize) -> Vec<u64> {
    let mut rows: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    for c in cycles {
        for (k, &v) in c.iter().enumerate() {
            let next = c[(k + 1) % c.len()];
            rows[v - 1] |= 1 << (next - 1);
        }
    }
    rows
}

pub fn minrank_gf2(g: &DiGraph) -> Result<Minrank> {
    let l = Limits::default();
    minrank_gf2_with(g, l.minrank_max_n, l.minrank_budget)
}

/// Branch and bound over fitting matrices, one row at a time.
///
/// Starts from the better of the clique-cover and cycle-cover matrices and
/// stops as soon as the MAIS lower bound is met. Candidate rows already in
/// the span of the chosen rows are tried first since they cost nothing.
pub fn minrank_gf2_with(g: &DiGraph, max_n: usize, budget: u64) -> Result<Minrank> {
    let n = g.n();
    check_limit("minrank", n, max_n.min(64))?;
    if n == 0 {
        return Ok(Minrank {
            rank: 0,
            matrix: Vec::new(),
            nodes_explored: 0,
        });
    }
    let free = g.out_masks();
    let lower = mais(g)?.size;

    let mut incumbent = if n <= Limits::default().cover_max_n {
        let cc = clique_matrix(&clique_cover_number(g)?.1.parts, n);
        let cy = cycle_matrix(&cycle_cover_bound(g)?.cycles, n);
        if rank_of(&cy) < rank_of(&cc) {
            cy
        } else {
            cc
        }
    } else {
        (0..n).map(|v| 1u64 << v).collect()
    };
    let mut best = rank_of(&incumbent);

    let mut search = Search {
        free: &free,
        n,
        lower,
        budget,
        explored: 0,
        rows: vec![0; n],
        best: &mut best,
        incumbent: &mut incumbent,
    };
    if *search.best > lower {
        let mut basis = XorBasis::default();
        search.descend(0, &mut basis)?;
    }
    let explored = search.explored;
    debug_assert_eq!(rank_of(&incumbent), best);
    Ok(Minrank {
        rank: best,
        matrix: rows_to_matrix(&incumbent, n),
        nodes_explored: explored,
    })
}

struct Search<'a> {
    free: &'a [u64],
    n: usize,
    lower: usize,
    budget: u64,
    explored: u64,
    rows: Vec<u64>,
    best: &'a mut usize,
    incumbent: &'a mut Vec<u64>,
}

impl Search<'_> {
    /// Returns Ok(true) once the lower bound has been reached.
    fn descend(&mut self, v: usize, basis: &mut XorBasis) -> Result<bool> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::SearchBudgetExceeded {
                what: "minrank",
                budget: self.budget,
            });
        }
        if v == self.n {
            if basis.len < *self.best {
                *self.best = basis.len;
                self.incumbent.clone_from(&self.rows);
            }
            return Ok(*self.best <= self.lower);
        }
        let fixed = 1u64 << v;
        let subsets = subsets_of(self.free[v]);

        // the subproblem below depends only on the span, so one in-span
        // row and one row per coset of the span are enough
        if let Some(&s) = subsets.iter().find(|&&s| basis.canonical(fixed | s) == 0) {
            self.rows[v] = fixed | s;
            if self.descend(v + 1, basis)? {
                return Ok(true);
            }
        }
        let mut cosets = HashSet::new();
        for &s in &subsets {
            if basis.len + 1 >= *self.best {
                return Ok(false);
            }
            let row = fixed | s;
            let r = basis.canonical(row);
            if r == 0 || !cosets.insert(r) {
                continue;
            }
            let top = basis.insert_reduced(r);
            self.rows[v] = row;
            let done = self.descend(v + 1, basis)?;
            basis.remove_top(top);
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn subsets_of(mask: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << mask.count_ones());
    let mut s = 0u64;
    loop {
        out.push(s);
        if s == mask {
            break;
        }
        s = (s.wrapping_sub(mask)) & mask;
    }
    out
}

/// Plain enumeration of every fitting matrix; only for small graphs.
pub fn minrank_gf2_exhaustive(g: &DiGraph) -> Result<usize> {
    check_limit("exhaustive minrank", g.n(), 6)?;
    let n = g.n();
    let frees: Vec<Vec<u64>> = g.out_masks().into_iter().map(subsets_of).collect();
    let mut best = n;
    let mut idx = vec![0usize; n];
    loop {
        let rows: Vec<u64> = (0..n).map(|v| 1u64 << v | frees[v][idx[v]]).collect();
        best = best.min(rank_of(&rows));
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < frees[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::super::code::is_valid_linear_code;
    use super::*;
    use crate::graph::disjoint_union;

    #[test]
    fn known_values() {
        assert_eq!(minrank_gf2(&DiGraph::complete(5)).unwrap().rank, 1);
        assert_eq!(minrank_gf2(&DiGraph::new(5)).unwrap().rank, 5);
        assert_eq!(minrank_gf2(&DiGraph::bidirectional_cycle(5)).unwrap().rank, 3);
        assert_eq!(minrank_gf2(&DiGraph::directed_cycle(5)).unwrap().rank, 4);
        assert_eq!(minrank_gf2(&DiGraph::new(0)).unwrap().rank, 0);
    }

    #[test]
    fn exhaustive_agrees_on_c5() {
        assert_eq!(minrank_gf2_exhaustive(&DiGraph::bidirectional_cycle(5)).unwrap(), 3);
    }

    #[test]
    fn union_of_pentagons() {
        let c5 = DiGraph::bidirectional_cycle(5);
        let m = minrank_gf2(&disjoint_union(&c5, &c5)).unwrap();
        assert_eq!(m.rank, 6);
    }

    #[test]
    fn witness_matrix_fits_and_decodes() {
        let g = DiGraph::bidirectional_cycle(5);
        let m = minrank_gf2(&g).unwrap();
        for (i, row) in m.matrix.iter().enumerate() {
            assert_eq!(row[i], 1);
            for (j, &b) in row.iter().enumerate() {
                if j != i && b == 1 {
                    assert!(g.has_edge(i + 1, j + 1));
                }
            }
        }
        let code = m.code();
        assert_eq!(code.length(), 3);
        assert!(is_valid_linear_code(&g, &code).unwrap().valid);
    }

    #[test]
    fn budget_is_reported() {
        let c5 = DiGraph::bidirectional_cycle(5);
        let err = minrank_gf2_with(&disjoint_union(&c5, &c5), 10, 5).unwrap_err();
        assert!(err.is_limit());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of(0b101), vec![0, 1, 4, 5]);
        assert_eq!(subsets_of(0), vec![0]);
    }
}
