use rand::Rng as _;

use super::{triffer_count, TernaryCode, TernaryWord};
use crate::bounds::kl_bernoulli;
use crate::error::{out_of_range, Result};
use crate::rng::attempt_rng;

/// Largest random sample the alteration step will process (bad-triple
/// detection is cubic in the sample size).
pub const MAX_SAMPLE: usize = 2048;

#[derive(Debug, Clone)]
pub struct Alteration {
    pub code: TernaryCode,
    /// Number of words drawn per attempt.
    pub sample_size: usize,
    /// Size guaranteed in expectation.
    pub target: usize,
    pub attempts: usize,
    pub reached_target: bool,
}

fn check_range(n: usize, m: usize) -> Result<f64> {
    if m == 0 || 9 * m >= 2 * n {
        return Err(out_of_range(format!("alteration needs 1 <= m < 2n/9, got n={n}, m={m}")));
    }
    kl_bernoulli(m as f64 / n as f64, 2.0 / 9.0)
}

fn total_words(n: usize) -> f64 {
    3f64.powi(n.min(1000) as i32)
}

/// `⌊√2 · 2^{nh/2}⌋` with `h = H(m/n, 2/9)`, clamped to `[3, 3^n]`.
pub fn alteration_sample_size(n: usize, m: usize) -> Result<usize> {
    let h = check_range(n, m)?;
    let t = (std::f64::consts::SQRT_2 * (n as f64 * h / 2.0).exp2()).floor();
    let t = t.clamp(3.0, total_words(n));
    if t > MAX_SAMPLE as f64 {
        return Err(out_of_range(format!("sample size {t} exceeds {MAX_SAMPLE}")));
    }
    Ok(t as usize)
}

/// `⌈(2√2/3) · 2^{nh/2} − 1⌉`, the size the construction reaches in expectation.
pub fn alteration_target_size(n: usize, m: usize) -> Result<usize> {
    let h = check_range(n, m)?;
    let v = 2.0 * std::f64::consts::SQRT_2 / 3.0 * (n as f64 * h / 2.0).exp2() - 1.0;
    Ok(v.ceil().max(0.0) as usize)
}

/// Samples words uniformly, then deletes words until no triple triffers in
/// fewer than `m` coordinates. Each round deletes the word lying in the most
/// remaining bad triples (ties: lexicographically smallest word).
///
/// Attempts run in order until one reaches the expected size or `retries`
/// attempts are used; the largest code seen is returned.
pub fn alteration_construct(n: usize, m: usize, seed: u64, retries: usize) -> Result<Alteration> {
    let t = alteration_sample_size(n, m)?;
    let target = alteration_target_size(n, m)?;
    let retries = retries.max(1);
    let mut best: Option<TernaryCode> = None;
    let mut attempts = 0;
    for attempt in 0..retries {
        attempts += 1;
        let code = one_attempt(n, m, t, seed, attempt as u64);
        let better = match &best {
            None => true,
            Some(b) => code.size() > b.size() || (code.size() == b.size() && code.words() < b.words()),
        };
        if better {
            best = Some(code);
        }
        if best.as_ref().is_some_and(|b| b.size() >= target) {
            break;
        }
    }
    let code = best.expect("at least one attempt");
    Ok(Alteration { reached_target: code.size() >= target, code, sample_size: t, target, attempts })
}

fn one_attempt(n: usize, m: usize, t: usize, seed: u64, attempt: u64) -> TernaryCode {
    let mut rng = attempt_rng(seed, attempt);
    let mut sample = TernaryCode::empty(n);
    for _ in 0..t {
        let mut w = TernaryWord::zeros(n);
        for i in 0..n {
            w.set(i, rng.gen_range(0..3u8));
        }
        sample.insert(w).expect("length n");
    }
    let words = sample.words();
    let mut bad: Vec<[usize; 3]> = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            for k in j + 1..words.len() {
                if triffer_count(&words[i], &words[j], &words[k]).expect("length n") < m {
                    bad.push([i, j, k]);
                }
            }
        }
    }
    let mut degree = vec![0usize; words.len()];
    for tr in &bad {
        for &v in tr {
            degree[v] += 1;
        }
    }
    let mut alive_word = vec![true; words.len()];
    let mut alive_triple = vec![true; bad.len()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); words.len()];
    for (idx, tr) in bad.iter().enumerate() {
        for &v in tr {
            incident[v].push(idx);
        }
    }
    loop {
        // max_by_key keeps the last maximum; scan in reverse so ties resolve to the smallest word
        let Some((victim, &d)) = degree.iter().enumerate().rev().max_by_key(|(_, &d)| d) else { break };
        if d == 0 {
            break;
        }
        alive_word[victim] = false;
        for &idx in &incident[victim] {
            if std::mem::replace(&mut alive_triple[idx], false) {
                for &v in &bad[idx] {
                    degree[v] -= 1;
                }
            }
        }
    }
    TernaryCode::new(n, words.into_iter().zip(alive_word).filter_map(|(w, a)| a.then_some(w))).expect("length n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ternary::is_m_trifferent;

    #[test]
    fn rejects_out_of_range() {
        assert!(alteration_construct(9, 3, 0, 1).is_err());
        assert!(alteration_construct(9, 0, 0, 1).is_err());
        assert!(alteration_construct(9, 2, 0, 1).is_err());
        assert!(alteration_construct(10, 2, 0, 1).is_ok());
    }

    #[test]
    fn sample_size_uses_kl_exponent() {
        // h = H(1/20, 2/9) = (1/20) log2(9/40) + (19/20) log2(171/140)
        let h = 0.05 * (9.0f64 / 40.0).log2() + 0.95 * (171.0f64 / 140.0).log2();
        let expect = (std::f64::consts::SQRT_2 * (60.0 * h / 2.0).exp2()).floor() as usize;
        assert!(expect > 3);
        assert_eq!(alteration_sample_size(60, 3).unwrap(), expect);
        // m/n above 2/9 is outside the construction's range
        assert!(alteration_sample_size(4, 1).is_err());
    }

    #[test]
    fn output_is_verified_and_deterministic() {
        for seed in 0..5 {
            let a = alteration_construct(9, 1, seed, 3).unwrap();
            assert!(is_m_trifferent(&a.code, 1).unwrap().holds);
            let b = alteration_construct(9, 1, seed, 3).unwrap();
            assert_eq!(a.code, b.code);
        }
        let a = alteration_construct(30, 3, 11, 2).unwrap();
        assert!(is_m_trifferent(&a.code, 3).unwrap().holds);
    }
}
