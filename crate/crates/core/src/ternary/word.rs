use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const LANE: usize = 64;

/// A word of `{0,1,2}^n`, stored as two bit planes: `ones` marks coordinates
/// holding 1 and `twos` marks coordinates holding 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryWord {
    len: usize,
    ones: Vec<u64>,
    twos: Vec<u64>,
}

fn lanes(len: usize) -> usize {
    len.div_ceil(LANE)
}

fn lane_mask(len: usize, lane: usize) -> u64 {
    let used = len - lane * LANE;
    if used >= LANE {
        u64::MAX
    } else {
        (1u64 << used) - 1
    }
}

impl TernaryWord {
    pub fn zeros(len: usize) -> Self {
        Self { len, ones: vec![0; lanes(len)], twos: vec![0; lanes(len)] }
    }

    pub fn new(symbols: &[u8]) -> Result<Self> {
        let mut w = Self::zeros(symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            if s > 2 {
                return Err(Error::InvalidSymbol(char::from(b'0'.wrapping_add(s))));
            }
            w.set(i, s);
        }
        Ok(w)
    }

    /// Word with every coordinate equal to `symbol`.
    pub fn constant(len: usize, symbol: u8) -> Self {
        let mut w = Self::zeros(len);
        for i in 0..len {
            w.set(i, symbol % 3);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u8 {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        let (lane, bit) = (i / LANE, i % LANE);
        ((self.ones[lane] >> bit) & 1) as u8 | ((((self.twos[lane] >> bit) & 1) as u8) << 1)
    }

    pub fn set(&mut self, i: usize, symbol: u8) {
        assert!(i < self.len && symbol < 3);
        let (lane, bit) = (i / LANE, i % LANE);
        self.ones[lane] &= !(1 << bit);
        self.twos[lane] &= !(1 << bit);
        match symbol {
            1 => self.ones[lane] |= 1 << bit,
            2 => self.twos[lane] |= 1 << bit,
            _ => {}
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.symbols().collect()
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.ones.iter().zip(&self.twos).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    pub fn distance(&self, other: &Self) -> usize {
        self.ones
            .iter()
            .zip(&self.twos)
            .zip(other.ones.iter().zip(&other.twos))
            .map(|((a1, a2), (b1, b2))| ((a1 ^ b1) | (a2 ^ b2)).count_ones() as usize)
            .sum()
    }

    /// Coordinatewise sum modulo 3.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        let mut out = Self::zeros(self.len);
        for i in 0..self.len {
            out.set(i, (self.get(i) + other.get(i)) % 3);
        }
        out
    }

    fn zeros_plane(&self, lane: usize) -> u64 {
        !(self.ones[lane] | self.twos[lane]) & lane_mask(self.len, lane)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

/// Number of coordinates where `a`, `b`, `c` take three distinct symbols.
///
/// Computed per 64-bit lane as `(any 0) & (any 1) & (any 2)`.
pub fn triffer_count(a: &TernaryWord, b: &TernaryWord, c: &TernaryWord) -> Result<usize> {
    check_len(a.len, b.len)?;
    check_len(a.len, c.len)?;
    Ok((0..a.ones.len()).map(|l| triffer_lane(a, b, c, l).count_ones() as usize).sum())
}

fn triffer_lane(a: &TernaryWord, b: &TernaryWord, c: &TernaryWord, l: usize) -> u64 {
    let any0 = a.zeros_plane(l) | b.zeros_plane(l) | c.zeros_plane(l);
    let any1 = a.ones[l] | b.ones[l] | c.ones[l];
    let any2 = a.twos[l] | b.twos[l] | c.twos[l];
    any0 & any1 & any2
}

/// Coordinates (0-based, increasing) where the three words triffer.
pub fn triffer_positions(a: &TernaryWord, b: &TernaryWord, c: &TernaryWord) -> Result<Vec<usize>> {
    check_len(a.len, b.len)?;
    check_len(a.len, c.len)?;
    let mut out = Vec::new();
    for l in 0..a.ones.len() {
        let mut mask = triffer_lane(a, b, c, l);
        while mask != 0 {
            out.push(l * LANE + mask.trailing_zeros() as usize);
            mask &= mask - 1;
        }
    }
    Ok(out)
}

impl Ord for TernaryWord {
    /// Lexicographic on the symbol sequence; shorter words first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.symbols().cmp(other.symbols()))
    }
}

impl PartialOrd for TernaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryWord({self})")
    }
}

impl FromStr for TernaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(&symbols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn triffer_examples() {
        assert_eq!(triffer_positions(&w("012"), &w("120"), &w("201")).unwrap(), vec![0, 1, 2]);
        assert_eq!(triffer_positions(&w("00"), &w("01"), &w("02")).unwrap(), vec![1]);
        assert!(triffer_positions(&w("000"), &w("000"), &w("012")).unwrap().is_empty());
    }

    #[test]
    fn triffer_rejects_length_mismatch() {
        assert!(matches!(
            triffer_positions(&w("01"), &w("012"), &w("01")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn long_words_cross_lane_boundaries() {
        let n = 150;
        let a = TernaryWord::constant(n, 0);
        let b = TernaryWord::constant(n, 1);
        let mut c = TernaryWord::constant(n, 2);
        c.set(64, 0);
        c.set(149, 1);
        assert_eq!(triffer_count(&a, &b, &c).unwrap(), n - 2);
        assert_eq!(a.distance(&c), n - 1);
        assert_eq!(c.weight(), n - 1);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = vec![w("20"), w("02"), w("11"), w("10")];
        v.sort();
        assert_eq!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["02", "10", "11", "20"]);
    }

    #[test]
    fn parse_rejects_other_characters() {
        assert!(matches!("0130".parse::<TernaryWord>(), Err(Error::InvalidSymbol('3'))));
    }
}
