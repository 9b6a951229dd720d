//! Dense Gaussian elimination over [`Scalar`] fields.

use super::{Rational, Scalar};

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>], tol: f64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let pick = if S::EXACT {
            (r..rows.len()).find(|&i| !rows[i][c].is_zero_tol(tol))
        } else {
            // partial pivoting for the float backend
            (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero_tol(tol))
                .max_by(|&a, &b| rows[a][c].to_f64().abs().total_cmp(&rows[b][c].to_f64().abs()))
        };
        let Some(p) = pick else { continue };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c].sign(0.0) != std::cmp::Ordering::Equal {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let v = rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(vectors: &[Vec<S>], tol: f64) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m, tol).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<S: Scalar>(m: &[Vec<S>], tol: f64) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug, tol);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose<S: Clone>(m: &[Vec<S>]) -> Vec<Vec<S>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec<S: Scalar>(m: &[Vec<S>], v: &[S]) -> Vec<S> {
    m.iter().map(|row| super::dot(row, v)).collect()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn null_space(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut rows = m.to_vec();
    let piv = rref(&mut rows, 0.0);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &p) in piv.iter().enumerate() {
                x[p] = -rows[r][f].clone();
            }
            x
        })
        .collect()
}
