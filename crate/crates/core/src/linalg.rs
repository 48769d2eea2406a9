//! Dense exact linear algebra over a field.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::Q;

pub trait Field: Clone + PartialEq + Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, other: &Self) -> Self;
    fn fsub(&self, other: &Self) -> Self;
    fn fmul(&self, other: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Multiplicative inverse; callers guarantee `self` is nonzero.
    fn finv(&self) -> Self;
    fn from_q(q: &Q) -> Self;
}

impl Field for Q {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, other: &Self) -> Self {
        self + other
    }
    fn fsub(&self, other: &Self) -> Self {
        self - other
    }
    fn fmul(&self, other: &Self) -> Self {
        self * other
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.recip()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::fzero(); cols]; rows]
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::fone();
    }
    m
}

pub fn cols<F>(m: &Matrix<F>) -> usize {
    m.first().map_or(0, |r| r.len())
}

/// Column `j` as a vector.
pub fn column<F: Clone>(m: &Matrix<F>, j: usize) -> Vec<F> {
    m.iter().map(|r| r[j].clone()).collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (n, k, p) = (a.len(), b.len(), cols(b));
    let mut out: Matrix<F> = zeros(n, p);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].fis_zero() {
                continue;
            }
            for j in 0..p {
                if !b[l][j].fis_zero() {
                    out[i][j] = out[i][j].fadd(&a[i][l].fmul(&b[l][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::fzero(), |acc, (x, y)| {
                if x.fis_zero() || y.fis_zero() {
                    acc
                } else {
                    acc.fadd(&x.fmul(y))
                }
            })
        })
        .collect()
}

pub fn transpose<F: Clone>(a: &Matrix<F>, ncols: usize) -> Matrix<F> {
    (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn trace<F: Field>(a: &Matrix<F>) -> F {
    a.iter().enumerate().fold(F::fzero(), |acc, (i, row)| acc.fadd(&row[i]))
}

pub fn sub<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.fsub(y)).collect()).collect()
}

pub fn scale<F: Field>(a: &Matrix<F>, s: &F) -> Matrix<F> {
    a.iter().map(|r| r.iter().map(|x| x.fmul(s)).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let ncols = cols(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].fis_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].finv();
        for x in m[r].iter_mut() {
            *x = x.fmul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].fis_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.fis_zero() {
                        *x = x.fsub(&f.fmul(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// One solution of `a x = b`, if any.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let n = cols(a);
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::fzero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][n].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::fone() } else { F::fzero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the column space of the vectors given as columns `vs`.
pub fn independent_subset<F: Field>(vs: &[Vec<F>]) -> Vec<usize> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut m = transpose(&vs.to_vec(), vs[0].len());
    rref(&mut m)
}
