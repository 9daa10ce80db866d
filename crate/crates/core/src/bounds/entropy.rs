use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{out_of_range, Result};

fn plogp(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Binary entropy `H(p)` in bits, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(out_of_range(format!("entropy argument {p} outside [0,1]")));
    }
    Ok(-plogp(p) - plogp(1.0 - p))
}

/// Kullback–Leibler divergence (bits) between Bernoulli(`p`) and Bernoulli(`q`).
pub fn kl_bernoulli(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(out_of_range(format!("p = {p} outside [0,1]")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(out_of_range(format!("reference probability {q} must lie in (0,1)")));
    }
    let term = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a * (a / b).log2() };
    Ok((term(p, q) + term(1.0 - p, 1.0 - q)).max(0.0))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `log2` of a big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.log2() + shift as f64
}

/// Both sides of `2^{nH(k/n)}/(n+1) ≤ C(n,k) ≤ 2^{nH(k/n)}`, decided exactly.
///
/// `2^{nH(k/n)} = n^n / (k^k (n-k)^{n-k})`, so both comparisons reduce to
/// big-integer products.
pub fn binomial_entropy_check(n: u64, k: u64) -> Result<(bool, bool)> {
    if k > n {
        return Err(out_of_range(format!("k = {k} exceeds n = {n}")));
    }
    let pow = |b: u64, e: u64| -> BigUint {
        if e == 0 {
            BigUint::one()
        } else {
            BigUint::from(b).pow(e as u32)
        }
    };
    let c = binomial(n, k);
    let denom = pow(k, k) * pow(n - k, n - k);
    let nn = pow(n, n);
    let scaled = &c * &denom;
    let lower = BigUint::from(n + 1) * &scaled >= nn;
    let upper = scaled <= nn;
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let third = binary_entropy(1.0 / 3.0).unwrap();
        assert!((third - (3f64.log2() - 2.0 / 3.0)).abs() < 1e-12);
        assert!((third - 0.918296).abs() < 1e-6);
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn kl_examples() {
        let q = 2.0 / 9.0;
        assert_eq!(kl_bernoulli(q, q).unwrap(), 0.0);
        assert!((kl_bernoulli(0.0, q).unwrap() - (9.0f64 / 7.0).log2()).abs() < 1e-12);
        let expect = (1.0 / 9.0) * 0.5f64.log2() + (8.0 / 9.0) * (8.0f64 / 7.0).log2();
        assert!((kl_bernoulli(1.0 / 9.0, q).unwrap() - expect).abs() < 1e-12);
        assert!(kl_bernoulli(0.5, 0.0).is_err());
        assert!(kl_bernoulli(0.5, 1.0).is_err());
    }

    #[test]
    fn binomial_entropy_examples() {
        assert_eq!(binomial(30, 15), BigUint::from(155_117_520u64));
        assert_eq!(binomial_entropy_check(7, 0).unwrap(), (true, true));
        assert_eq!(binomial_entropy_check(30, 15).unwrap(), (true, true));
        assert_eq!(binomial_entropy_check(10, 3).unwrap(), (true, true));
        assert!(binomial_entropy_check(3, 4).is_err());
    }

    #[test]
    fn log2_of_large_integers() {
        let x = BigUint::one() << 2000u32;
        assert!((log2_big(&x) - 2000.0).abs() < 1e-9);
        assert!((log2_big(&BigUint::from(1024u32)) - 10.0).abs() < 1e-12);
    }
}
