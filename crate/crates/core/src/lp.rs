//! Dense primal simplex for `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! The origin is feasible, so no phase one is needed. Bland's rule keeps
//! the pivoting finite for degenerate problems. Works over any
//! [`Scalar`]; exact types give exact optima.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    /// Optimal primal point.
    pub x: Vec<T>,
    /// Optimal dual multipliers, one per constraint row.
    pub duals: Vec<T>,
}

pub fn maximize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> Result<LpSolution<T>> {
    let rows = a.len();
    let cols = c.len();
    if b.len() != rows || a.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("constraint matrix shape".into()));
    }
    if b.iter().any(|v| v.is_strictly_negative()) {
        return Err(Error::InvalidParams("right-hand side must be non-negative".into()));
    }

    // tableau columns: x (cols), slacks (rows), rhs
    let width = cols + rows + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(rows + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().cloned());
        r.extend((0..rows).map(|k| if k == i { T::one() } else { T::zero() }));
        r.push(b[i].clone());
        t.push(r);
    }
    let mut obj: Vec<T> = c.iter().map(|v| -v.clone()).collect();
    obj.extend((0..=rows).map(|_| T::zero()));
    t.push(obj);
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    loop {
        // Bland: lowest-index column with negative reduced cost
        let Some(enter) = (0..width - 1).find(|&j| t[rows][j].is_strictly_negative()) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..rows {
            if !t[i][enter].is_strictly_positive() {
                continue;
            }
            let ratio = t[i][width - 1].clone() / t[i][enter].clone();
            let better = match &leave {
                None => true,
                Some((li, best)) => {
                    let d = ratio.clone() - best.clone();
                    d.is_strictly_negative() || (d.is_negligible() && basis[i] < basis[*li])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((p, _)) = leave else {
            return Err(Error::InvalidParams("linear program is unbounded".into()));
        };
        pivot(&mut t, p, enter);
        basis[p] = enter;
    }

    let mut x = vec![T::zero(); cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            x[bv] = t[i][width - 1].clone();
        }
    }
    let duals = (0..rows).map(|i| t[rows][cols + i].clone()).collect();
    Ok(LpSolution {
        value: t[rows][width - 1].clone(),
        x,
        duals,
    })
}

fn pivot<T: Scalar>(t: &mut [Vec<T>], p: usize, q: usize) {
    let pv = t[p][q].clone();
    for v in t[p].iter_mut() {
        *v = v.clone() / pv.clone();
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p {
            continue;
        }
        let f = row[q].clone();
        if f.is_zero() {
            continue;
        }
        for (v, pr) in row.iter_mut().zip(&prow) {
            if !pr.is_zero() {
                *v = v.clone() - f.clone() * pr.clone();
            }
        }
    }
}
