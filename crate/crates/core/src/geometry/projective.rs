use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::gf3::{add_vec, check_entries, mul, scale_vec};
use crate::error::{out_of_range, Result};

/// A point of `PG(k−1, 3)`: a nonzero vector whose first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(Vec<u8>);

impl ProjectivePoint {
    /// Normalizes any nonzero vector to its canonical representative.
    pub fn new(v: &[u8]) -> Result<Self> {
        check_entries(v)?;
        let Some(&lead) = v.iter().find(|&&x| x != 0) else {
            return Err(out_of_range("the zero vector is not a projective point"));
        };
        Ok(Self(scale_vec(lead, v)))
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_canonical(v: &[u8]) -> bool {
        v.iter().find(|&&x| x != 0) == Some(&1) && v.iter().all(|&x| x <= 2)
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `[a choose b]_3`, the number of `b`-dimensional subspaces of `F₃^a`.
pub fn gaussian_binomial(a: u32, b: u32) -> BigUint {
    if b > a {
        return BigUint::ZERO;
    }
    let three = BigUint::from(3u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..b {
        num *= three.pow(a - i) - 1u32;
        den *= three.pow(i + 1) - 1u32;
    }
    num / den
}

/// Number of points of `PG(k−1,3)`.
pub fn point_count(k: usize) -> usize {
    (3usize.pow(k as u32) - 1) / 2
}

/// Canonical points in lexicographic order.
pub fn enumerate_points(k: usize) -> Vec<ProjectivePoint> {
    PointSpace::new(k).points
}

/// Points of `PG(k−1,3)` with an index lookup for arbitrary nonzero vectors.
#[derive(Debug, Clone)]
pub struct PointSpace {
    k: usize,
    points: Vec<ProjectivePoint>,
    /// Base-3 code of a vector → index of its point (`u32::MAX` for zero).
    lookup: Vec<u32>,
}

/// Largest dimension for which the vector lookup table is built.
pub const MAX_TABLE_DIM: usize = 14;

impl PointSpace {
    pub fn new(k: usize) -> Self {
        assert!((1..=MAX_TABLE_DIM).contains(&k), "dimension {k} outside 1..={MAX_TABLE_DIM}");
        let total = 3usize.pow(k as u32);
        let mut lookup = vec![u32::MAX; total];
        let mut points = Vec::with_capacity(point_count(k));
        let mut v = vec![0u8; k];
        for code in 0..total {
            let mut c = code;
            for i in (0..k).rev() {
                v[i] = (c % 3) as u8;
                c /= 3;
            }
            if ProjectivePoint::is_canonical(&v) {
                let idx = points.len() as u32;
                lookup[code] = idx;
                let twice: Vec<u8> = v.iter().map(|&x| mul(2, x)).collect();
                lookup[Self::code_of(&twice)] = idx;
                points.push(ProjectivePoint(v.clone()));
            }
        }
        Self { k, points, lookup }
    }

    fn code_of(v: &[u8]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * 3 + x as usize)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &ProjectivePoint {
        &self.points[idx]
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[u8]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.k);
        let i = self.lookup[Self::code_of(v)];
        (i != u32::MAX).then_some(i as usize)
    }

    /// The four points on the line through two distinct points, sorted.
    pub fn line_through(&self, a: usize, b: usize) -> [usize; 4] {
        let (u, v) = (self.points[a].coords(), self.points[b].coords());
        let mut line = [
            a,
            b,
            self.index_of(&add_vec(u, v)).expect("distinct points"),
            self.index_of(&add_vec(u, &scale_vec(2, v))).expect("distinct points"),
        ];
        line.sort_unstable();
        line
    }

    /// All lines as sorted index quadruples, in lexicographic order.
    pub fn lines(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                let line = self.line_through(a, b);
                // each line is produced once, from its two smallest points
                if line[0] == a && line[1] == b {
                    out.push(line);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Lines of `PG(k−1,3)`, each as its sorted set of four points.
pub fn enumerate_lines(k: usize) -> Result<Vec<[ProjectivePoint; 4]>> {
    if k < 2 {
        return Err(out_of_range(format!("lines need k >= 2, got {k}")));
    }
    let space = PointSpace::new(k);
    Ok(space.lines().into_iter().map(|l| l.map(|i| space.point(i).clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn normalization() {
        let p = ProjectivePoint::new(&[0, 2, 1]).unwrap();
        assert_eq!(p.coords(), &[0, 1, 2]);
        assert!(ProjectivePoint::new(&[0, 0]).is_err());
        assert!(ProjectivePoint::new(&[3, 0]).is_err());
        assert_eq!(ProjectivePoint::new(&[2, 2]).unwrap(), ProjectivePoint::new(&[1, 1]).unwrap());
    }

    #[test]
    fn counts() {
        for (k, pts, lines) in [(2, 4, 1), (3, 13, 13), (4, 40, 130), (5, 121, 1210)] {
            assert_eq!(enumerate_points(k).len(), pts);
            let ls = enumerate_lines(k).unwrap();
            assert_eq!(ls.len(), lines);
            assert_eq!(gaussian_binomial(k as u32, 2).to_usize(), Some(lines));
        }
        assert_eq!(gaussian_binomial(2, 1).to_u32(), Some(4));
        assert_eq!(gaussian_binomial(4, 2).to_u32(), Some(130));
        assert_eq!(gaussian_binomial(7, 0).to_u32(), Some(1));
        assert_eq!(gaussian_binomial(2, 3).to_u32(), Some(0));
    }

    #[test]
    fn points_are_sorted_and_canonical() {
        let pts = enumerate_points(4);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|p| ProjectivePoint::is_canonical(p.coords())));
    }

    #[test]
    fn every_point_on_the_same_number_of_lines() {
        for k in 3..=5 {
            let space = PointSpace::new(k);
            let mut deg = vec![0usize; space.len()];
            for l in space.lines() {
                for p in l {
                    deg[p] += 1;
                }
            }
            let expect = gaussian_binomial(k as u32 - 1, 1).to_usize().unwrap();
            assert!(deg.iter().all(|&d| d == expect));
        }
    }
}
