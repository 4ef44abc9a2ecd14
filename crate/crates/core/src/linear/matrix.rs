//! Dense matrices over a prime field, stored as row vectors.

use super::field::PrimeField;

pub type Matrix = Vec<Vec<u32>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// In-place row echelon form with unit pivots; rows below each pivot are
/// cleared, rows above are left alone. Returns the pivot columns and the
/// row transform `T` with `T * original = reduced`.
pub fn row_echelon(f: PrimeField, m: &mut Matrix, cols: usize) -> (Vec<usize>, Matrix) {
    let rows = m.len();
    let mut t = identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        t.swap(r, p);
        let inv = f.inv(m[r][c]);
        scale(f, &mut m[r], inv);
        scale(f, &mut t[r], inv);
        for i in r + 1..rows {
            let factor = m[i][c];
            if factor != 0 {
                let (top, bottom) = m.split_at_mut(i);
                axpy(f, &mut bottom[0], &top[r], factor);
                let (top, bottom) = t.split_at_mut(i);
                axpy(f, &mut bottom[0], &top[r], factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, t)
}

fn scale(f: PrimeField, row: &mut [u32], k: u32) {
    for v in row.iter_mut() {
        *v = f.mul(*v, k);
    }
}

/// `dst -= k * src`.
pub fn axpy(f: PrimeField, dst: &mut [u32], src: &[u32], k: u32) {
    for (d, s) in dst.iter_mut().zip(src) {
        if *s != 0 {
            *d = f.sub(*d, f.mul(k, *s));
        }
    }
}

pub fn rank(f: PrimeField, m: &Matrix, cols: usize) -> usize {
    let mut work = m.clone();
    row_echelon(f, &mut work, cols).0.len()
}

/// Coefficients `alpha` with `sum_k alpha_k * m[k] = target`, if any.
pub fn solve_left(f: PrimeField, m: &Matrix, target: &[u32]) -> Option<Vec<u32>> {
    let cols = target.len();
    let mut e = m.clone();
    let (pivots, t) = row_echelon(f, &mut e, cols);
    let mut residual = target.to_vec();
    let mut coeff = vec![0u32; m.len()];
    for (r, &c) in pivots.iter().enumerate() {
        let k = residual[c];
        if k != 0 {
            axpy(f, &mut residual, &e[r], k);
            coeff[r] = k;
        }
    }
    if residual.iter().any(|&v| v != 0) {
        return None;
    }
    // alpha = coeff * T
    let mut alpha = vec![0u32; m.len()];
    for (r, &k) in coeff.iter().enumerate() {
        if k != 0 {
            for (a, &tv) in alpha.iter_mut().zip(&t[r]) {
                *a = f.add(*a, f.mul(k, tv));
            }
        }
    }
    Some(alpha)
}

/// Row vector times matrix.
pub fn combine(f: PrimeField, alpha: &[u32], m: &Matrix, cols: usize) -> Vec<u32> {
    let mut out = vec![0u32; cols];
    for (&a, row) in alpha.iter().zip(m) {
        if a != 0 {
            for (o, &v) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(a, v));
            }
        }
    }
    out
}

pub fn multiply(f: PrimeField, a: &Matrix, b: &Matrix, cols: usize) -> Matrix {
    a.iter().map(|row| combine(f, row, b, cols)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::field::GF2;
    use super::*;

    #[test]
    fn echelon_with_transform() {
        let orig = vec![vec![1, 1, 0], vec![1, 1, 1]];
        let mut m = orig.clone();
        let (piv, t) = row_echelon(GF2, &mut m, 3);
        assert_eq!(m, vec![vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(multiply(GF2, &t, &orig, 3), m);
    }

    #[test]
    fn ranks_over_gf3() {
        let f = PrimeField::new(3).unwrap();
        let m = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        assert_eq!(rank(f, &m, 3), 2);
        assert_eq!(rank(f, &identity(4), 4), 4);
    }

    #[test]
    fn left_solves() {
        let f = PrimeField::new(5).unwrap();
        let m = vec![vec![1, 2, 3], vec![0, 1, 4]];
        let target = combine(f, &[3, 2], &m, 3);
        let alpha = solve_left(f, &m, &target).unwrap();
        assert_eq!(combine(f, &alpha, &m, 3), target);
        assert!(solve_left(f, &m, &[0, 0, 1]).is_none());
        assert_eq!(solve_left(f, &vec![], &[0, 0]), Some(vec![]));
    }
}
