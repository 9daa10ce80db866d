use serde::Serialize;

use super::gf3::{add_vec, all_vectors, dot, gf3_rank, null_space, rref, scale_vec, solve};
use super::projective::PointSpace;
use crate::error::{out_of_range, Error, Result};

/// `base + span(directions)` inside `F₃^k`, also kept as the solution set
/// of `equations · x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineSubspace {
    pub base: Vec<u8>,
    pub directions: Vec<Vec<u8>>,
    pub equations: Vec<Vec<u8>>,
    pub rhs: Vec<u8>,
}

impl AffineSubspace {
    pub fn new(base: Vec<u8>, directions: Vec<Vec<u8>>) -> Result<Self> {
        let k = base.len();
        if let Some(d) = directions.iter().find(|d| d.len() != k) {
            return Err(Error::LengthMismatch { expected: k, found: d.len() });
        }
        if gf3_rank(&directions) != directions.len() {
            return Err(out_of_range("directions are linearly dependent"));
        }
        let equations = if directions.is_empty() { identity(k) } else { null_space(&directions, k) };
        let equations = rref(&equations).0;
        let rhs = equations.iter().map(|e| dot(e, &base)).collect();
        Ok(Self { base, directions, equations, rhs })
    }

    /// Solution set of `equations · x = rhs`; `None` if inconsistent.
    pub fn from_equations(k: usize, equations: &[Vec<u8>], rhs: &[u8]) -> Option<Self> {
        let base = solve(equations, rhs, k)?;
        let directions = null_space(equations, k);
        let (eqs, _) = rref(equations);
        let rhs = eqs.iter().map(|e| dot(e, &base)).collect();
        Some(Self { base, directions, equations: eqs, rhs })
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        self.equations.iter().zip(&self.rhs).all(|(e, &b)| dot(e, x) == b)
    }

    pub fn contains_origin(&self) -> bool {
        self.rhs.iter().all(|&b| b == 0)
    }

    /// All `3^d` vectors.
    pub fn vectors(&self) -> Vec<Vec<u8>> {
        all_vectors(self.dim())
            .map(|coefs| {
                coefs.iter().zip(&self.directions).fold(self.base.clone(), |acc, (&c, d)| add_vec(&acc, &scale_vec(c, d)))
            })
            .collect()
    }
}

fn identity(k: usize) -> Vec<Vec<u8>> {
    (0..k).map(|i| (0..k).map(|j| u8::from(i == j)).collect()).collect()
}

/// Nonzero right-hand sides in lexicographic order.
pub(crate) const RHS: [[u8; 2]; 8] = [[0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2]];

/// Pairs of equations (in reduced echelon form) cutting out every
/// codimension-2 subspace of `F₃^k`, sorted.
pub(crate) fn codim2_equations(k: usize) -> Vec<[Vec<u8>; 2]> {
    let dual = PointSpace::new(k);
    let mut out: Vec<[Vec<u8>; 2]> = dual
        .lines()
        .into_iter()
        .map(|l| {
            let (r, _) = rref(&[dual.point(l[0]).coords().to_vec(), dual.point(l[1]).coords().to_vec()]);
            [r[0].clone(), r[1].clone()]
        })
        .collect();
    out.sort();
    out
}

/// All `(k−2)`-dimensional affine subspaces of `F₃^k` avoiding the origin.
///
/// Ordered by the reduced equations of the direction space, then by the
/// right-hand side `(a,b)` lexicographically.
pub fn enumerate_affine_targets(k: usize) -> Result<Vec<AffineSubspace>> {
    if k < 2 {
        return Err(out_of_range(format!("affine targets need k >= 2, got {k}")));
    }
    let mut out = Vec::new();
    for eqs in codim2_equations(k) {
        for rhs in RHS {
            out.push(AffineSubspace::from_equations(k, &eqs, &rhs).expect("rank-2 system is consistent"));
        }
    }
    Ok(out)
}
