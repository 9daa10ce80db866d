use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::entropy::log2_big;

/// Margin (in log2 units) added to upper bounds and subtracted from lower
/// bounds before they are reported, so float rounding never invalidates them.
pub const LOG2_GUARD: f64 = 1.0 / (1u64 << 30) as f64;

/// Largest value for which an integer is derived from a float log2.
const FLOAT_INT_LIMIT: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

/// A one-sided bound on a code size, held in log2 space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub direction: Direction,
    pub log2_value: f64,
    pub provenance: String,
    /// `false` for rate-only statements with an unspecified constant; such
    /// bounds never take part in composition.
    pub constant_known: bool,
    /// `⌊2^log2_value⌋` for upper bounds, `⌈2^log2_value⌉` for lower bounds.
    pub integer_value: Option<u64>,
}

impl BoundValue {
    /// Upper bound from a float `log2` (may be `+inf`).
    pub fn upper_log2(log2: f64, provenance: impl Into<String>, constant_known: bool) -> Self {
        let v = log2 + LOG2_GUARD;
        let integer_value = (v < FLOAT_INT_LIMIT).then(|| v.exp2().floor() as u64);
        Self { direction: Direction::Upper, log2_value: v, provenance: provenance.into(), constant_known, integer_value }
    }

    /// Lower bound from a float `log2`.
    pub fn lower_log2(log2: f64, provenance: impl Into<String>, constant_known: bool) -> Self {
        let v = log2 - LOG2_GUARD;
        let integer_value = (v < FLOAT_INT_LIMIT).then(|| v.exp2().ceil().max(0.0) as u64);
        Self { direction: Direction::Lower, log2_value: v, provenance: provenance.into(), constant_known, integer_value }
    }

    /// Upper bound from an exact rational; the integer part is exact.
    pub fn upper_exact(value: &BigRational, provenance: impl Into<String>) -> Self {
        let floor = value.floor().to_integer();
        let mut b = Self::upper_log2(log2_rational(value), provenance, true);
        b.integer_value = nonneg_u64(&floor);
        b
    }

    /// Lower bound from an exact rational; the integer part is exact.
    pub fn lower_exact(value: &BigRational, provenance: impl Into<String>) -> Self {
        let ceil = value.ceil().to_integer();
        let mut b = Self::lower_log2(log2_rational(value), provenance, true);
        b.integer_value = nonneg_u64(&ceil);
        b
    }

    pub fn upper_int(value: u64, provenance: impl Into<String>) -> Self {
        let mut b = Self::upper_log2((value as f64).log2(), provenance, true);
        b.integer_value = Some(value);
        b
    }

    pub fn lower_int(value: u64, provenance: impl Into<String>) -> Self {
        let mut b = Self::lower_log2((value as f64).log2(), provenance, true);
        b.integer_value = Some(value);
        b
    }

    /// Value compared during composition: the integer when known, otherwise the float.
    pub fn effective_log2(&self) -> f64 {
        match self.integer_value {
            Some(0) => f64::NEG_INFINITY,
            Some(v) => (v as f64).log2(),
            None => self.log2_value,
        }
    }

    /// Whether `self` is at least as strong as `other` (same direction).
    pub fn at_least_as_tight(&self, other: &Self) -> bool {
        match (self.direction, self.integer_value, other.integer_value) {
            (Direction::Upper, Some(a), Some(b)) => a <= b,
            (Direction::Lower, Some(a), Some(b)) => a >= b,
            (Direction::Upper, _, _) => self.effective_log2() <= other.effective_log2(),
            (Direction::Lower, _, _) => self.effective_log2() >= other.effective_log2(),
        }
    }
}

fn nonneg_u64(x: &BigInt) -> Option<u64> {
    if x.is_negative() {
        Some(0)
    } else {
        x.to_u64()
    }
}

pub fn log2_rational(value: &BigRational) -> f64 {
    if !value.is_positive() {
        return f64::NEG_INFINITY;
    }
    let num: BigUint = value.numer().magnitude().clone();
    let den: BigUint = value.denom().magnitude().clone();
    let (q, r) = num.div_rem(&den);
    if q.bits() > 60 || r.is_zero() {
        log2_big(&num) - log2_big(&den)
    } else {
        value.to_f64().map_or_else(|| log2_big(&num) - log2_big(&den), f64::log2)
    }
}

/// `(b(λ))^n`-style asymptotic rate of a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatePoint {
    pub lambda: f64,
    pub rate: f64,
    pub provenance: String,
    pub constant_known: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn directed_rounding_keeps_integers_valid() {
        let three = BigRational::from_integer(BigInt::from(3));
        let up = BoundValue::upper_exact(&three, "t");
        let lo = BoundValue::lower_exact(&three, "t");
        assert_eq!(up.integer_value, Some(3));
        assert_eq!(lo.integer_value, Some(3));
        assert!(up.log2_value > 3f64.log2() && lo.log2_value < 3f64.log2());
        assert_eq!(BoundValue::upper_log2(3f64.log2(), "t", true).integer_value, Some(3));
        assert_eq!(BoundValue::lower_log2(3f64.log2(), "t", true).integer_value, Some(3));
        let frac = BigRational::new(BigInt::from(23), BigInt::from(4));
        assert_eq!(BoundValue::upper_exact(&frac, "t").integer_value, Some(5));
        assert_eq!(BoundValue::lower_exact(&frac, "t").integer_value, Some(6));
    }

    #[test]
    fn huge_values_have_no_integer() {
        let b = BoundValue::upper_log2(400.0, "t", true);
        assert_eq!(b.integer_value, None);
        assert!(b.effective_log2() > 400.0);
    }
}
