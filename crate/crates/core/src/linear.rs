//! Linear codes over `F₃` given by a generator matrix, minimality tests, and
//! the correspondence between generator columns and projective points.

use serde::{Deserialize, Serialize};

use crate::bounds::binomial;
use crate::error::{out_of_range, Error, Result};
use crate::geometry::gf3::all_vectors;
use crate::geometry::{Gf3Matrix, PointMultiset, ProjectivePoint};
use crate::ternary::{TernaryCode, TernaryWord};

/// Largest dimension whose codewords are enumerated.
pub const MAX_ENUM_DIM: usize = 12;

/// Default ceiling on `C(n, m−1) · 3^{2k}` for [`is_m_minimal`].
pub const DEFAULT_MINIMALITY_BUDGET: u64 = 100_000_000;

/// A linear code with a full-rank `k × n` generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Gf3Matrix,
}

impl LinearCode {
    pub fn new(generator: Gf3Matrix) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.num_rows() {
            return Err(Error::RankDeficient { rank, rows: generator.num_rows() });
        }
        Ok(Self { generator })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        Self::new(Gf3Matrix::new(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.generator.num_rows()
    }

    pub fn len(&self) -> usize {
        self.generator.num_cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn generator(&self) -> &Gf3Matrix {
        &self.generator
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.dim() > MAX_ENUM_DIM {
            return Err(out_of_range(format!("dimension {} exceeds the enumeration limit {MAX_ENUM_DIM}", self.dim())));
        }
        Ok(())
    }

    /// All `3^k` codewords, indexed by message vector in lexicographic order.
    pub fn codeword_vectors(&self) -> Result<Vec<Vec<u8>>> {
        self.check_enumerable()?;
        Ok(all_vectors(self.dim()).map(|x| self.generator.left_mul(&x)).collect())
    }
}

pub fn enumerate_codewords(code: &LinearCode) -> Result<TernaryCode> {
    let words = code.codeword_vectors()?.into_iter().map(|c| TernaryWord::new(&c)).collect::<Result<Vec<_>>>()?;
    TernaryCode::new(code.len(), words)
}

/// Supports as bitsets over `n` coordinates.
#[derive(Clone, PartialEq, Eq)]
struct Support(Vec<u64>);

impl Support {
    fn of(c: &[u8]) -> Self {
        let mut s = vec![0u64; c.len().div_ceil(64).max(1)];
        for (i, &x) in c.iter().enumerate() {
            if x != 0 {
                s[i / 64] |= 1 << (i % 64);
            }
        }
        Self(s)
    }

    /// `self ∖ mask ⊆ other ∖ mask`.
    fn subset_outside(&self, other: &Self, mask: &Self) -> bool {
        self.0.iter().zip(&other.0).zip(&mask.0).all(|((&a, &b), &d)| a & !d & !b == 0)
    }
}

/// Why a code fails (m-)minimality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MinimalityWitness {
    /// After deleting `deleted`, the support of `first` lies inside that of
    /// the independent codeword `second`.
    Nested { deleted: Vec<usize>, first: Vec<u8>, second: Vec<u8> },
    /// Deleting `deleted` sends the nonzero codeword `word` to zero.
    Collapse { deleted: Vec<usize>, word: Vec<u8> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub holds: bool,
    pub witness: Option<MinimalityWitness>,
}

fn independent(a: &[u8], b: &[u8]) -> bool {
    a != b && a.iter().zip(b).any(|(&x, &y)| (2 * x) % 3 != y)
}

fn nested_pair(words: &[(Vec<u8>, Support)], mask: &Support) -> Option<(Vec<u8>, Vec<u8>)> {
    for (c, sc) in words {
        for (d, sd) in words {
            if independent(c, d) && sc.subset_outside(sd, mask) {
                return Some((c.clone(), d.clone()));
            }
        }
    }
    None
}

fn sorted_nonzero(code: &LinearCode) -> Result<Vec<(Vec<u8>, Support)>> {
    let mut words: Vec<Vec<u8>> = code.codeword_vectors()?.into_iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
    words.sort();
    Ok(words.into_iter().map(|c| {
        let s = Support::of(&c);
        (c, s)
    }).collect())
}

/// No two linearly independent codewords have nested supports. The witness
/// is the lexicographically first violating pair.
pub fn is_minimal(code: &LinearCode) -> Result<MinimalityReport> {
    let words = sorted_nonzero(code)?;
    let mask = Support::of(&vec![0u8; code.len()]);
    let witness = nested_pair(&words, &mask).map(|(first, second)| MinimalityWitness::Nested { deleted: vec![], first, second });
    Ok(MinimalityReport { holds: witness.is_none(), witness })
}

/// Minimal with all codewords distinct after deleting any `m − 1` coordinates.
///
/// Refuses with [`Error::BudgetExceeded`] when `C(n, m−1) · 3^{2k}` exceeds `budget`.
pub fn is_m_minimal(code: &LinearCode, m: usize, budget: u64) -> Result<MinimalityReport> {
    if m == 0 {
        return Err(out_of_range("m must be at least 1"));
    }
    let n = code.len();
    if m - 1 > n {
        return Err(out_of_range(format!("cannot delete {} of {n} coordinates", m - 1)));
    }
    code.check_enumerable()?;
    let work = binomial(n as u64, (m - 1) as u64) * num_bigint::BigUint::from(3u32).pow(2 * code.dim() as u32);
    if work > num_bigint::BigUint::from(budget) {
        return Err(Error::BudgetExceeded(format!("C({n},{})*3^{} = {work} checks exceed {budget}", m - 1, 2 * code.dim())));
    }
    let words = sorted_nonzero(code)?;
    let mut deleted: Vec<usize> = (0..m - 1).collect();
    loop {
        let mut mask = vec![0u8; n];
        for &i in &deleted {
            mask[i] = 1;
        }
        let mask = Support::of(&mask);
        if let Some((c, _)) = words.iter().find(|(_, s)| s.subset_outside(&Support(vec![0; s.0.len()]), &mask)) {
            let witness = MinimalityWitness::Collapse { deleted: deleted.clone(), word: c.clone() };
            return Ok(MinimalityReport { holds: false, witness: Some(witness) });
        }
        if let Some((first, second)) = nested_pair(&words, &mask) {
            let witness = MinimalityWitness::Nested { deleted: deleted.clone(), first, second };
            return Ok(MinimalityReport { holds: false, witness: Some(witness) });
        }
        if !next_subset(&mut deleted, n) {
            return Ok(MinimalityReport { holds: true, witness: None });
        }
    }
}

/// Advances to the next subset of `0..n` in lexicographic order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let r = s.len();
    for i in (0..r).rev() {
        if s[i] < n - r + i {
            s[i] += 1;
            for j in i + 1..r {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Generator whose columns are the points of `b` (with repetition). The
/// default order is canonical; `order` lists the columns explicitly and must
/// be a rearrangement of the expanded multiset.
pub fn generator_from_points(b: &PointMultiset, order: Option<&[ProjectivePoint]>) -> Result<LinearCode> {
    let cols: Vec<Vec<u8>> = match order {
        None => b.expanded().iter().map(|p| p.coords().to_vec()).collect(),
        Some(o) => {
            let mut given = o.to_vec();
            given.sort();
            if given != b.expanded() {
                return Err(out_of_range("column order is not a rearrangement of the point multiset"));
            }
            o.iter().map(|p| p.coords().to_vec()).collect()
        }
    };
    let g = Gf3Matrix::from_columns(b.dim(), &cols)?;
    if g.rank() < b.dim() {
        return Err(Error::NotSpanning(b.dim()));
    }
    LinearCode::new(g)
}

#[derive(Debug, Clone)]
pub struct ColumnPoints {
    pub points: PointMultiset,
    /// Some two columns are proportional, so the geometric correspondence
    /// does not apply verbatim.
    pub has_dependent_columns: bool,
}

pub fn points_from_generator(g: &Gf3Matrix) -> Result<ColumnPoints> {
    let mut points = PointMultiset::new(g.num_rows());
    for (i, c) in g.columns().iter().enumerate() {
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroColumn(i));
        }
        points.insert(ProjectivePoint::new(c)?, 1)?;
    }
    let has_dependent_columns = !points.is_set();
    Ok(ColumnPoints { points, has_dependent_columns })
}

#[derive(Debug, Serialize, Deserialize)]
struct GeneratorFile {
    k: usize,
    n: usize,
    rows: Vec<Vec<u8>>,
}

/// Parses `{"k": .., "n": .., "rows": [[..],..]}`.
pub fn parse_generator_json(text: &str) -> Result<LinearCode> {
    let f: GeneratorFile = serde_json::from_str(text)?;
    if f.rows.len() != f.k {
        return Err(Error::LengthMismatch { expected: f.k, found: f.rows.len() });
    }
    if let Some(r) = f.rows.iter().find(|r| r.len() != f.n) {
        return Err(Error::LengthMismatch { expected: f.n, found: r.len() });
    }
    LinearCode::from_rows(f.rows)
}

pub fn generator_to_json(code: &LinearCode) -> String {
    let f = GeneratorFile { k: code.dim(), n: code.len(), rows: code.generator().rows().to_vec() };
    serde_json::to_string(&f).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{enumerate_points, is_strength_blocking};
    use crate::ternary::is_m_trifferent;

    fn simplex2() -> LinearCode {
        generator_from_points(&PointMultiset::full(2), None).unwrap()
    }

    #[test]
    fn codeword_enumeration() {
        let c = enumerate_codewords(&LinearCode::from_rows(vec![vec![1]]).unwrap()).unwrap();
        assert_eq!(c, TernaryCode::parse_words("0 1 2").unwrap());
        let c = enumerate_codewords(&LinearCode::new(Gf3Matrix::identity(2)).unwrap()).unwrap();
        assert_eq!(c.size(), 9);
        assert!(matches!(LinearCode::from_rows(vec![vec![1, 1], vec![2, 2]]), Err(Error::RankDeficient { rank: 1, rows: 2 })));
    }

    #[test]
    fn minimality_examples() {
        let id = LinearCode::new(Gf3Matrix::identity(2)).unwrap();
        let r = is_minimal(&id).unwrap();
        assert!(!r.holds);
        let Some(MinimalityWitness::Nested { first, second, .. }) = r.witness else { panic!("expected a nested pair") };
        assert_eq!((first, second), (vec![0, 1], vec![1, 1]));
        assert!(is_minimal(&simplex2()).unwrap().holds);
        assert!(is_minimal(&LinearCode::from_rows(vec![vec![1, 2, 0]]).unwrap()).unwrap().holds);
    }

    #[test]
    fn m_minimality_examples() {
        let s = simplex2();
        assert_eq!(is_m_minimal(&s, 1, DEFAULT_MINIMALITY_BUDGET).unwrap().holds, is_minimal(&s).unwrap().holds);
        assert!(!is_m_minimal(&s, 2, DEFAULT_MINIMALITY_BUDGET).unwrap().holds);
        let err = is_m_minimal(&s, 2, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn collapse_is_reported() {
        // weight-1 codeword (0,0,1) vanishes once coordinate 2 is deleted
        let c = LinearCode::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = is_m_minimal(&c, 2, DEFAULT_MINIMALITY_BUDGET).unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn columns_and_points() {
        let s = simplex2();
        let cp = points_from_generator(s.generator()).unwrap();
        assert_eq!(cp.points, PointMultiset::full(2));
        assert!(!cp.has_dependent_columns);
        let g = Gf3Matrix::new(vec![vec![1, 2], vec![0, 0]]).unwrap();
        let cp = points_from_generator(&g).unwrap();
        assert!(cp.has_dependent_columns && cp.points.distinct() == 1 && cp.points.total_size() == 2);
        let g = Gf3Matrix::new(vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert!(matches!(points_from_generator(&g), Err(Error::ZeroColumn(1))));
        let line = PointMultiset::from_points(3, enumerate_points(3).into_iter().take(4)).unwrap();
        assert!(matches!(generator_from_points(&line, None), Err(Error::NotSpanning(3))));
    }

    #[test]
    fn explicit_order_is_respected() {
        let pts = enumerate_points(2);
        let rev: Vec<ProjectivePoint> = pts.iter().rev().cloned().collect();
        let c = generator_from_points(&PointMultiset::full(2), Some(&rev)).unwrap();
        assert_eq!(c.generator().column(0), pts[3].coords());
        assert!(generator_from_points(&PointMultiset::full(2), Some(&pts[..3])).is_err());
    }

    #[test]
    fn full_plane_is_strength_three() {
        let c = generator_from_points(&PointMultiset::full(3), None).unwrap();
        let words = enumerate_codewords(&c).unwrap();
        for m in 1..=4 {
            let t = is_m_trifferent(&words, m).unwrap().holds;
            assert_eq!(t, is_m_minimal(&c, m, DEFAULT_MINIMALITY_BUDGET).unwrap().holds);
            assert_eq!(t, is_strength_blocking(&PointMultiset::full(3), m).unwrap().holds);
        }
    }

    #[test]
    fn json_round_trip() {
        let s = simplex2();
        let text = generator_to_json(&s);
        assert_eq!(parse_generator_json(&text).unwrap(), s);
        assert!(parse_generator_json(r#"{"k":2,"n":2,"rows":[[1,0]]}"#).is_err());
        assert!(parse_generator_json(r#"{"k":1,"n":2,"rows":[[1,0,1]]}"#).is_err());
    }
}
