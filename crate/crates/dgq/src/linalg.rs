#![allow(clippy::needless_range_loop)]

//! Exact dense linear algebra over the rationals, sized for desk-scale
//! instances. Used by the antipode solver and the bundle calculus.

use crate::rational::Rat;
use num::{One, Zero};

pub type Mat = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(inner, b.len(), "dimension mismatch");
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    let prod = a[i][k].clone() * b[k][j].clone();
                    out[i][j] += prod;
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut out = zeros(cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

pub fn mat_vec(a: &Mat, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(x, y)| x.clone() * y.clone())
                .fold(Rat::zero(), |acc, t| acc + t)
        })
        .collect()
}

/// Row-reduces in place; returns the pivot columns.
pub fn row_reduce(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = m[r][j].clone() / inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = f.clone() * m[r][j].clone();
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut copy = m.clone();
    row_reduce(&mut copy).len()
}

/// Indices of the columns of `m` spanning its column space.
pub fn pivot_columns(m: &Mat) -> Vec<usize> {
    let mut copy = m.clone();
    row_reduce(&mut copy)
}

/// One solution of `A x = b`, if any; `None` when inconsistent. Free
/// variables are set to zero.
pub fn solve(a: &Mat, b: &[Rat]) -> Option<Vec<Rat>> {
    solve_with_free(a, b, &Rat::zero())
}

/// One solution of `A x = b` with every free variable fixed at `free`.
pub fn solve_with_free(a: &Mat, b: &[Rat], free: &Rat) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    assert_eq!(rows, b.len());
    let mut aug = zeros(rows, cols + 1);
    for i in 0..rows {
        aug[i][..cols].clone_from_slice(&a[i]);
        aug[i][cols] = b[i].clone();
    }
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&cols) {
        return None; // a pivot in the constants column: inconsistent
    }
    let mut x = vec![free.clone(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        let mut v = aug[r][cols].clone();
        // subtract the free-variable contributions of this reduced row
        for j in 0..cols {
            if j != c && !aug[r][j].is_zero() {
                let t = aug[r][j].clone() * free.clone();
                v -= t;
            }
        }
        x[c] = v;
    }
    Some(x)
}

/// Expresses `v` in the basis given by the listed columns of `basis_src`;
/// `None` if `v` lies outside their span.
pub fn coords_in_columns(basis_src: &Mat, cols: &[usize], v: &[Rat]) -> Option<Vec<Rat>> {
    let rows = basis_src.len();
    let mut a = zeros(rows, cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for i in 0..rows {
            a[i][j] = basis_src[i][c].clone();
        }
    }
    solve(&a, v)
}
