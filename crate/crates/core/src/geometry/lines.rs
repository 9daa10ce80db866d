use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::blocking::{is_strength_blocking, PointMultiset};
use super::projective::PointSpace;
use crate::error::{out_of_range, Error, Result};
use crate::rng::attempt_rng;

pub const DEFAULT_MAX_ATTEMPTS: usize = 50;

/// Probability that a uniformly random line of `PG(k−1,3)` meets a fixed
/// `(k−3)`-dimensional projective subspace.
pub fn line_hit_probability(k: u32) -> Result<BigRational> {
    if k < 3 {
        return Err(out_of_range(format!("hit probability needs k >= 3, got {k}")));
    }
    let three = BigInt::from(3);
    let a = three.pow(2 * k - 4);
    let b = three.pow(k - 1);
    let num = BigInt::from(11) * &a - BigInt::from(4) * &b + 1;
    let den = BigInt::from(27) * &a - BigInt::from(4) * &b + 1;
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinesMode {
    /// `t = ⌈10.729k + 4.385m − 23.287⌉`, size at most `43k + 18m − 93`.
    General,
    /// `t = ⌈2.447k + 1.001m − 5.310⌉`, for large `k`.
    Asymptotic,
}

/// Number of lines sampled per attempt.
pub fn lines_count(k: usize, m: usize, mode: LinesMode) -> Result<usize> {
    let (a, b, c) = match mode {
        LinesMode::General => (10_729i64, 4_385i64, 23_287i64),
        LinesMode::Asymptotic => (2_447, 1_001, 5_310),
    };
    let milli = a * k as i64 + b * m as i64 - c;
    if milli <= 0 {
        return Err(out_of_range(format!("no lines to sample for k={k}, m={m}")));
    }
    Ok(milli.div_euclid(1000) as usize + usize::from(milli % 1000 != 0))
}

#[derive(Debug, Clone)]
pub struct RandomLines {
    pub set: PointMultiset,
    pub lines_per_attempt: usize,
    pub attempts: usize,
}

/// Union of `t` uniformly random lines (with replacement), retried until the
/// union is a strength-`m` strong blocking set.
pub fn random_lines_blocking(k: usize, m: usize, mode: LinesMode, seed: u64, max_attempts: usize) -> Result<RandomLines> {
    if k < 3 || m == 0 {
        return Err(out_of_range(format!("need k >= 3 and m >= 1, got k={k}, m={m}")));
    }
    let t = lines_count(k, m, mode)?;
    let space = PointSpace::new(k);
    for attempt in 0..max_attempts {
        let mut rng = attempt_rng(seed, attempt as u64);
        let mut chosen = vec![false; space.len()];
        for _ in 0..t {
            // a uniform ordered pair of distinct points gives a uniform line
            let a = rng.gen_range(0..space.len());
            let mut b = rng.gen_range(0..space.len() - 1);
            if b >= a {
                b += 1;
            }
            for p in space.line_through(a, b) {
                chosen[p] = true;
            }
        }
        let set = PointMultiset::from_points(
            k,
            chosen.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| space.point(i).clone()),
        )?;
        if is_strength_blocking(&set, m)?.holds {
            return Ok(RandomLines { set, lines_per_attempt: t, attempts: attempt + 1 });
        }
    }
    Err(Error::ConstructionFailed { attempts: max_attempts, lines: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Fraction of lines meeting the subspace `x_1 = x_2 = 0`, by enumeration.
    fn counted_hit_probability(k: usize) -> BigRational {
        let space = PointSpace::new(k);
        let in_w = |i: usize| space.point(i).coords()[..2] == [0, 0];
        let lines = space.lines();
        let hits = lines.iter().filter(|l| l.iter().any(|&p| in_w(p))).count();
        ratio(hits as i64, lines.len() as i64)
    }

    #[test]
    fn hit_probability_matches_enumeration() {
        assert_eq!(line_hit_probability(3).unwrap(), ratio(4, 13));
        for k in 3..=6 {
            assert_eq!(line_hit_probability(k as u32).unwrap(), counted_hit_probability(k), "k={k}");
        }
        for k in 3..=8 {
            assert!(line_hit_probability(k).unwrap() < ratio(11, 27));
        }
        let far = line_hit_probability(40).unwrap().to_f64().unwrap();
        assert!((far - 11.0 / 27.0).abs() < 1e-12);
        assert!(line_hit_probability(2).is_err());
    }

    #[test]
    fn hit_probability_monte_carlo() {
        let space = PointSpace::new(4);
        let mut rng = attempt_rng(5, 0);
        let trials = 100_000;
        let mut hits = 0usize;
        for _ in 0..trials {
            let a = rng.gen_range(0..space.len());
            let mut b = rng.gen_range(0..space.len() - 1);
            if b >= a {
                b += 1;
            }
            // in k = 4 the fixed subspace is the line x_1 = x_2 = 0
            let line = space.line_through(a, b);
            if line.iter().any(|&p| space.point(p).coords()[..2] == [0, 0]) {
                hits += 1;
            }
        }
        let p = line_hit_probability(4).unwrap().to_f64().unwrap();
        let sd = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(((hits as f64 / trials as f64) - p).abs() < 3.0 * sd);
    }

    #[test]
    fn line_counts() {
        assert_eq!(lines_count(5, 1, LinesMode::General).unwrap(), 35);
        assert_eq!(lines_count(3, 1, LinesMode::General).unwrap(), 14);
        assert_eq!(lines_count(10, 2, LinesMode::Asymptotic).unwrap(), 22);
        assert!(lines_count(1, 1, LinesMode::Asymptotic).is_err());
    }

    #[test]
    fn construction_verifies_and_is_reproducible() {
        let r = random_lines_blocking(3, 1, LinesMode::General, 0, DEFAULT_MAX_ATTEMPTS).unwrap();
        assert!(is_strength_blocking(&r.set, 1).unwrap().holds);
        for seed in 0..5 {
            let a = random_lines_blocking(4, 2, LinesMode::General, seed, 10).unwrap();
            let b = random_lines_blocking(4, 2, LinesMode::General, seed, 10).unwrap();
            assert_eq!(a.set, b.set);
            assert!(a.set.total_size() <= 4 * a.lines_per_attempt);
        }
        assert!(random_lines_blocking(2, 1, LinesMode::General, 0, 1).is_err());
    }
}
