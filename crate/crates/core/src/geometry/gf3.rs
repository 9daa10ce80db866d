//! Dense linear algebra over `F₃` with entries stored as `u8` in `{0,1,2}`.

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

#[inline]
pub fn add(a: u8, b: u8) -> u8 {
    (a + b) % 3
}

#[inline]
pub fn mul(a: u8, b: u8) -> u8 {
    (a * b) % 3
}

/// Multiplicative inverse of a nonzero element (each is its own inverse).
#[inline]
pub fn inv(a: u8) -> u8 {
    debug_assert!(a == 1 || a == 2);
    a
}

pub fn dot(a: &[u8], b: &[u8]) -> u8 {
    (a.iter().zip(b).map(|(&x, &y)| (x * y) as u32).sum::<u32>() % 3) as u8
}

pub fn add_vec(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| add(x, y)).collect()
}

pub fn scale_vec(c: u8, a: &[u8]) -> Vec<u8> {
    a.iter().map(|&x| mul(c, x)).collect()
}

pub(crate) fn check_entries(v: &[u8]) -> Result<()> {
    match v.iter().find(|&&x| x > 2) {
        Some(&x) => Err(out_of_range(format!("entry {x} is not in {{0,1,2}}"))),
        None => Ok(()),
    }
}

/// A `rows × cols` matrix over `F₃`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf3Matrix {
    rows: Vec<Vec<u8>>,
    cols: usize,
}

impl Gf3Matrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, found: r.len() });
            }
            check_entries(r)?;
        }
        Ok(Self { rows, cols })
    }

    /// Matrix whose columns are the given vectors of length `k`.
    pub fn from_columns(k: usize, columns: &[Vec<u8>]) -> Result<Self> {
        let mut rows = vec![Vec::with_capacity(columns.len()); k];
        for c in columns {
            if c.len() != k {
                return Err(Error::LengthMismatch { expected: k, found: c.len() });
            }
            for (i, &x) in c.iter().enumerate() {
                rows[i].push(x);
            }
        }
        if columns.is_empty() {
            return Ok(Self { rows, cols: 0 });
        }
        Self::new(rows)
    }

    pub fn identity(k: usize) -> Self {
        let rows = (0..k).map(|i| (0..k).map(|j| u8::from(i == j)).collect()).collect();
        Self { rows, cols: k }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.rows[r][c]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        self.rows.iter().map(|r| r[c]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// `x G` for a message vector `x` of length `num_rows`.
    pub fn left_mul(&self, x: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.cols];
        for (coef, row) in x.iter().zip(&self.rows) {
            if *coef != 0 {
                for (o, &v) in out.iter_mut().zip(row) {
                    *o = add(*o, mul(*coef, v));
                }
            }
        }
        out
    }

    /// `G v` for a column vector `v` of length `num_cols`.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn rank(&self) -> usize {
        gf3_rank(&self.rows)
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<u8>]) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = mul(*x, s);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = 3 - m[i][c];
                let pivot_row = m[r].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = add(*x, mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn gf3_rank(rows: &[Vec<u8>]) -> usize {
    rref(rows).0.len()
}

/// Basis of `{x : R x = 0}` for the given rows, each of length `cols`.
pub fn null_space(rows: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = (3 - row[f]) % 3;
            }
            v
        })
        .collect()
}

/// A solution of `R x = b` (free variables zero), if one exists.
pub fn solve(rows: &[Vec<u8>], rhs: &[u8], cols: usize) -> Option<Vec<u8>> {
    let aug: Vec<Vec<u8>> = rows.iter().zip(rhs).map(|(r, &b)| r.iter().copied().chain([b]).collect()).collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0u8; cols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols];
    }
    Some(x)
}

/// Every vector of `F₃^k`, in lexicographic order.
pub fn all_vectors(k: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = 3usize.pow(k as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0u8; k];
        for i in (0..k).rev() {
            v[i] = (code % 3) as u8;
            code /= 3;
        }
        v
    })
}
