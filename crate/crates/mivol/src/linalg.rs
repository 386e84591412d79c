//! Small dense linear algebra over exact rationals.
//!
//! Everything here is O(n^3) Gaussian elimination on matrices of dimension
//! at most 8; clarity over cleverness.

use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};

pub type Point = Vec<Rat>;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot of mismatched lengths");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn smul(s: &Rat, a: &[Rat]) -> Point {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Rat::is_zero)
}

pub fn norm_sq(a: &[Rat]) -> Rat {
    dot(a, a)
}

pub fn zeros(n: usize) -> Point {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Point {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

/// Row-reduce in place; returns the pivot column of each pivot row.
fn row_reduce(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for c2 in 0..cols {
                    let t = &f * &m[r][c2];
                    m[i][c2] -= t;
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

pub fn rank(rows: &[Point]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solve the square system `a x = b`; None when `a` is singular.
pub fn solve_square(a: &[Point], b: &[Rat]) -> Option<Point> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = zeros(n);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

pub fn det(a: &[Point]) -> Rat {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            acc = -acc;
        }
        acc *= &m[c][c];
        let inv = m[c][c].clone().recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for c2 in c..n {
                let t = &f * &m[c][c2];
                m[i][c2] -= t;
            }
        }
    }
    acc
}

pub fn abs_det(a: &[Point]) -> Rat {
    det(a).abs()
}

/// Inverse of a square matrix; None when singular.
pub fn invert(a: &[Point]) -> Option<Vec<Point>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    // After reduction the left block is the identity with rows in pivot order.
    let mut inv = vec![zeros(n); n];
    for (r, &c) in pivots.iter().enumerate() {
        inv[c] = m[r][n..].to_vec();
    }
    Some(inv)
}

/// Basis of { x : row · x = 0 for every row }.
pub fn null_space(rows: &[Point], dim: usize) -> Vec<Point> {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| {
        assert_eq!(r.len(), dim);
        r.clone()
    }).collect();
    let pivots = row_reduce(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = zeros(dim);
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product where the matrix is given by rows.
pub fn mat_vec(rows: &[Point], x: &[Rat]) -> Point {
    rows.iter().map(|r| dot(r, x)).collect()
}
