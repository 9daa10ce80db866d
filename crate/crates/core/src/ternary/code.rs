use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::word::{triffer_count, TernaryWord};
use crate::error::{out_of_range, Error, Result};

/// A set of distinct words of a common length, iterated in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryCode {
    len: usize,
    words: BTreeSet<TernaryWord>,
}

impl TernaryCode {
    pub fn empty(len: usize) -> Self {
        Self { len, words: BTreeSet::new() }
    }

    /// Builds a code of length `len`; repeated words collapse.
    pub fn new(len: usize, words: impl IntoIterator<Item = TernaryWord>) -> Result<Self> {
        let mut code = Self::empty(len);
        for w in words {
            code.insert(w)?;
        }
        Ok(code)
    }

    /// Parses whitespace-separated words, e.g. `"000 111 222"`.
    pub fn parse_words(s: &str) -> Result<Self> {
        let words = s.split_whitespace().map(str::parse).collect::<Result<Vec<TernaryWord>>>()?;
        let len = words.first().map_or(0, TernaryWord::len);
        Self::new(len, words)
    }

    pub fn insert(&mut self, w: TernaryWord) -> Result<bool> {
        if w.len() != self.len {
            return Err(Error::LengthMismatch { expected: self.len, found: w.len() });
        }
        Ok(self.words.insert(w))
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &TernaryWord) -> bool {
        self.words.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TernaryWord> {
        self.words.iter()
    }

    pub fn words(&self) -> Vec<TernaryWord> {
        self.words.iter().cloned().collect()
    }
}

impl fmt::Display for TernaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for TernaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryCode(n={}, {self})", self.len)
    }
}

pub type Triple = [TernaryWord; 3];

/// Smallest number of triffering coordinates over all triples of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrifferenceReport {
    /// `None` when the code has fewer than three words (no triple to violate anything).
    pub min_trifference: Option<usize>,
    #[serde(serialize_with = "ser_triple")]
    pub witness: Option<Triple>,
}

fn ser_triple<S: serde::Serializer>(t: &Option<Triple>, s: S) -> std::result::Result<S::Ok, S::Error> {
    t.as_ref().map(|t| t.iter().map(ToString::to_string).collect::<Vec<_>>()).serialize(s)
}

/// Triples `(a, b, c)` with `a < b < c` in code order.
fn for_each_triple(words: &[TernaryWord], mut f: impl FnMut(&TernaryWord, &TernaryWord, &TernaryWord) -> bool) {
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            for k in j + 1..words.len() {
                if !f(&words[i], &words[j], &words[k]) {
                    return;
                }
            }
        }
    }
}

pub fn min_triple_trifference(code: &TernaryCode) -> TrifferenceReport {
    let words = code.words();
    let mut best: Option<(usize, Triple)> = None;
    for_each_triple(&words, |a, b, c| {
        let t = triffer_count(a, b, c).expect("code words share a length");
        if best.as_ref().is_none_or(|(m, _)| t < *m) {
            best = Some((t, [a.clone(), b.clone(), c.clone()]));
        }
        t > 0
    });
    match best {
        Some((m, w)) => TrifferenceReport { min_trifference: Some(m), witness: Some(w) },
        None => TrifferenceReport { min_trifference: None, witness: None },
    }
}

/// Result of an m-trifference check; `violation` is the first failing triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub violation: Option<Triple>,
}

pub fn is_m_trifferent(code: &TernaryCode, m: usize) -> Result<Verdict> {
    if m == 0 {
        return Err(out_of_range("m must be at least 1"));
    }
    let words = code.words();
    let mut violation = None;
    for_each_triple(&words, |a, b, c| {
        if triffer_count(a, b, c).expect("code words share a length") < m {
            violation = Some([a.clone(), b.clone(), c.clone()]);
            return false;
        }
        true
    });
    Ok(Verdict { holds: violation.is_none(), violation })
}

/// Applies `x ↦ y` with `y[coord_perm[i]] = symbol_perms[i][x[i]]`.
///
/// These maps (coordinate permutations and per-coordinate symbol
/// permutations) preserve the set of triffering coordinates up to relabeling.
pub fn apply_symmetry(code: &TernaryCode, coord_perm: &[usize], symbol_perms: &[[u8; 3]]) -> Result<TernaryCode> {
    let n = code.word_len();
    if coord_perm.len() != n || symbol_perms.len() != n {
        return Err(out_of_range(format!("expected {n} coordinate and symbol permutations")));
    }
    let mut seen = vec![false; n];
    for &p in coord_perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(out_of_range("coord_perm is not a permutation"));
        }
    }
    for sp in symbol_perms {
        let mut s = *sp;
        s.sort_unstable();
        if s != [0, 1, 2] {
            return Err(out_of_range("symbol permutation must permute {0,1,2}"));
        }
    }
    let mapped = code.iter().map(|x| {
        let mut y = TernaryWord::zeros(n);
        for i in 0..n {
            y.set(coord_perm[i], symbol_perms[i][x.get(i) as usize]);
        }
        y
    });
    TernaryCode::new(n, mapped)
}

/// Translation `x ↦ x + v` (mod 3), a special case of [`apply_symmetry`].
pub fn translate(code: &TernaryCode, v: &TernaryWord) -> Result<TernaryCode> {
    if v.len() != code.word_len() {
        return Err(Error::LengthMismatch { expected: code.word_len(), found: v.len() });
    }
    TernaryCode::new(code.word_len(), code.iter().map(|x| x.add(v)))
}

/// Replaces each word by its coordinatewise `factor`-fold repetition
/// (`01 ↦ 0011` for factor 2); triffering counts scale by `factor`.
pub fn repetition_lift(code: &TernaryCode, factor: usize) -> Result<TernaryCode> {
    if factor == 0 {
        return Err(out_of_range("repetition factor must be at least 1"));
    }
    let n = code.word_len();
    let lifted = code.iter().map(|x| {
        let mut y = TernaryWord::zeros(n * factor);
        for i in 0..n {
            for r in 0..factor {
                y.set(i * factor + r, x.get(i));
            }
        }
        y
    });
    TernaryCode::new(n * factor, lifted)
}

fn restrict(x: &TernaryWord, keep: &[usize]) -> TernaryWord {
    let mut y = TernaryWord::zeros(keep.len());
    for (j, &i) in keep.iter().enumerate() {
        y.set(j, x.get(i));
    }
    y
}

fn project(words: impl Iterator<Item = TernaryWord>, n: usize, deleted: &[usize]) -> Result<TernaryCode> {
    let keep: Vec<usize> = (0..n).filter(|i| !deleted.contains(i)).collect();
    let mut out = TernaryCode::empty(keep.len());
    let mut origin = std::collections::BTreeMap::new();
    for x in words {
        let y = restrict(&x, &keep);
        if let Some(prev) = origin.insert(y.clone(), x.clone()) {
            return Err(Error::Collision(prev.to_string(), x.to_string()));
        }
        out.insert(y)?;
    }
    Ok(out)
}

/// Removes the given coordinates from every word. Fails if two words become equal.
pub fn delete_coordinates(code: &TernaryCode, coords: &[usize]) -> Result<TernaryCode> {
    let n = code.word_len();
    if let Some(&bad) = coords.iter().find(|&&i| i >= n) {
        return Err(out_of_range(format!("coordinate {bad} out of range for length {n}")));
    }
    project(code.iter().cloned(), n, coords)
}

/// Drops every word whose coordinate `i` holds the least frequent symbol
/// there, then deletes coordinate `i`. At least `⌈2|C|/3⌉` words survive.
///
/// Ties go to the largest symbol. The only case where deletion can merge two
/// survivors is a three-word code whose words agree off `i`; the other tied
/// symbols are tried first and a collision is reported if all of them merge.
pub fn puncture_majority(code: &TernaryCode, i: usize) -> Result<TernaryCode> {
    let n = code.word_len();
    if n < 2 {
        return Err(out_of_range("puncturing needs length at least 2"));
    }
    if i >= n {
        return Err(out_of_range(format!("coordinate {i} out of range for length {n}")));
    }
    let mut counts = [0usize; 3];
    for x in code.iter() {
        counts[x.get(i) as usize] += 1;
    }
    let least = *counts.iter().min().expect("three symbols");
    let mut last_err = None;
    for drop in (0..3u8).rev().filter(|&s| counts[s as usize] == least) {
        let survivors = code.iter().filter(|x| x.get(i) != drop).cloned();
        match project(survivors, n, &[i]) {
            Ok(c) => return Ok(c),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one least-frequent symbol"))
}
