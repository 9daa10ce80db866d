use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::affine::{codim2_equations, AffineSubspace, RHS};
use super::gf3::dot;
use super::projective::{enumerate_points, PointSpace, ProjectivePoint};
use crate::error::{out_of_range, Error, Result};

/// A multiset of points of `PG(k−1,3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMultiset {
    k: usize,
    entries: BTreeMap<ProjectivePoint, u32>,
}

impl PointMultiset {
    pub fn new(k: usize) -> Self {
        Self { k, entries: BTreeMap::new() }
    }

    /// Every point of `PG(k−1,3)` once.
    pub fn full(k: usize) -> Self {
        let mut s = Self::new(k);
        for p in enumerate_points(k) {
            s.entries.insert(p, 1);
        }
        s
    }

    pub fn from_points(k: usize, points: impl IntoIterator<Item = ProjectivePoint>) -> Result<Self> {
        let mut s = Self::new(k);
        for p in points {
            s.insert(p, 1)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, p: ProjectivePoint, multiplicity: u32) -> Result<()> {
        if p.dim() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, found: p.dim() });
        }
        if multiplicity > 0 {
            *self.entries.entry(p).or_insert(0) += multiplicity;
        }
        Ok(())
    }

    pub fn remove_one(&mut self, p: &ProjectivePoint) -> bool {
        match self.entries.get_mut(p) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.entries.remove(p);
                true
            }
            None => false,
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Sum of multiplicities.
    pub fn total_size(&self) -> usize {
        self.entries.values().map(|&c| c as usize).sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, p: &ProjectivePoint) -> u32 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn is_set(&self) -> bool {
        self.entries.values().all(|&c| c == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProjectivePoint, u32)> {
        self.entries.iter().map(|(p, &c)| (p, c))
    }

    /// Points listed with repetition, in canonical order.
    pub fn expanded(&self) -> Vec<ProjectivePoint> {
        self.iter().flat_map(|(p, c)| std::iter::repeat_n(p.clone(), c as usize)).collect()
    }
}

/// Number of vectors of `a` lying on a line spanned by a point of `b`,
/// counted with multiplicity.
pub fn affine_block_count(b: &PointMultiset, a: &AffineSubspace) -> Result<usize> {
    if b.dim() != a.ambient_dim() {
        return Err(Error::LengthMismatch { expected: a.ambient_dim(), found: b.dim() });
    }
    let mut count = 0;
    for (p, c) in b.iter() {
        let twice: Vec<u8> = p.coords().iter().map(|&x| (2 * x) % 3).collect();
        let hits = usize::from(a.contains(p.coords())) + usize::from(a.contains(&twice));
        count += hits * c as usize;
    }
    Ok(count)
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockingVerdict {
    pub holds: bool,
    /// Smallest block count over all targets.
    pub min_count: usize,
    /// First target (in enumeration order) with count below `m`.
    pub witness: Option<AffineSubspace>,
}

/// Strength-`m` test via the affine criterion: every `(k−2)`-dimensional
/// affine subspace avoiding the origin must contain at least `m` vectors
/// from the lines through points of `b`.
pub fn is_strength_blocking(b: &PointMultiset, m: usize) -> Result<BlockingVerdict> {
    if m == 0 {
        return Err(out_of_range("strength must be at least 1"));
    }
    let k = b.dim();
    if k < 2 {
        return Err(out_of_range(format!("blocking sets need k >= 2, got {k}")));
    }
    let pts: Vec<(&ProjectivePoint, u32)> = b.iter().collect();
    let mut min_count = usize::MAX;
    let mut witness = None;
    for eqs in codim2_equations(k) {
        // bucket[s][t]: multiplicity of points with (f1·p, f2·p) = (s,t)
        let mut bucket = [[0usize; 3]; 3];
        for (p, c) in &pts {
            bucket[dot(&eqs[0], p.coords()) as usize][dot(&eqs[1], p.coords()) as usize] += *c as usize;
        }
        for [a, bb] in RHS {
            let (a2, b2) = ((2 * a) % 3, (2 * bb) % 3);
            let count = bucket[a as usize][bb as usize] + bucket[a2 as usize][b2 as usize];
            min_count = min_count.min(count);
            if count < m && witness.is_none() {
                witness = AffineSubspace::from_equations(k, &eqs, &[a, bb]);
            }
        }
    }
    Ok(BlockingVerdict { holds: witness.is_none(), min_count, witness })
}

/// The removal-resilient spanning form of the strength test: for every
/// hyperplane `H` and every codimension-1 subspace `W ⊂ H`, at least `m`
/// points of `b` (with multiplicity) lie in `H ∖ W`. Enumerates all pairs,
/// so only `k ≤ 4` is accepted.
pub fn is_strength_blocking_hyperplane(b: &PointMultiset, m: usize) -> Result<bool> {
    if m == 0 {
        return Err(out_of_range("strength must be at least 1"));
    }
    let k = b.dim();
    if !(2..=4).contains(&k) {
        return Err(out_of_range(format!("hyperplane form supports 2 <= k <= 4, got {k}")));
    }
    let space = PointSpace::new(k);
    let mult: Vec<usize> = space.points().iter().map(|p| b.multiplicity(p) as usize).collect();
    for h in space.points() {
        let in_h: Vec<usize> = (0..space.len()).filter(|&i| dot(h.coords(), space.point(i).coords()) == 0).collect();
        for w in subspaces_of_dim(&space, &in_h, k - 2) {
            let count: usize = in_h.iter().filter(|i| !w.contains(i)).map(|&i| mult[i]).sum();
            if count < m {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Point sets of all vector subspaces of dimension `d` spanned by points in `pool`.
fn subspaces_of_dim(space: &PointSpace, pool: &[usize], d: usize) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    let mut tuple = Vec::with_capacity(d);
    collect_spans(space, pool, d, 0, &mut tuple, &mut out);
    out
}

fn collect_spans(
    space: &PointSpace,
    pool: &[usize],
    d: usize,
    start: usize,
    tuple: &mut Vec<usize>,
    out: &mut BTreeSet<BTreeSet<usize>>,
) {
    if tuple.len() == d {
        let span = closure(space, tuple);
        // keep only spans of full dimension d: (3^d − 1)/2 points
        if span.len() == (3usize.pow(d as u32) - 1) / 2 {
            out.insert(span);
        }
        return;
    }
    for i in start..pool.len() {
        tuple.push(pool[i]);
        collect_spans(space, pool, d, i + 1, tuple, out);
        tuple.pop();
    }
}

fn closure(space: &PointSpace, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for (i, &a) in cur.iter().enumerate() {
            for &b in &cur[i + 1..] {
                for p in space.line_through(a, b) {
                    grew |= set.insert(p);
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct BlockingFile {
    k: usize,
    points: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    multiplicities: Option<Vec<u32>>,
}

/// Parses `{"k": .., "points": [[..],..], "multiplicities": [..]}`.
/// Points are normalized; repeated points accumulate multiplicity.
pub fn parse_blocking_json(text: &str) -> Result<PointMultiset> {
    let f: BlockingFile = serde_json::from_str(text)?;
    if let Some(ms) = &f.multiplicities {
        if ms.len() != f.points.len() {
            return Err(Error::LengthMismatch { expected: f.points.len(), found: ms.len() });
        }
    }
    let mut s = PointMultiset::new(f.k);
    for (i, p) in f.points.iter().enumerate() {
        let c = f.multiplicities.as_ref().map_or(1, |ms| ms[i]);
        s.insert(ProjectivePoint::new(p)?, c)?;
    }
    Ok(s)
}

/// Serializes with canonical representatives; multiplicities appear only
/// when some point repeats.
pub fn blocking_to_json(s: &PointMultiset) -> String {
    let f = BlockingFile {
        k: s.dim(),
        points: s.iter().map(|(p, _)| p.coords().to_vec()).collect(),
        multiplicities: (!s.is_set()).then(|| s.iter().map(|(_, c)| c).collect()),
    };
    serde_json::to_string(&f).expect("plain data serializes")
}
