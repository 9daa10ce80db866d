use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use rayon::prelude::*;

use super::outcome::{fetch_max, fetch_min, thread_pool, Deadline, SearchOutcome};
use crate::bounds::{best_bounds, BaseFacts};
use crate::error::{out_of_range, Result};
use crate::ternary::{is_m_trifferent, TernaryCode, TernaryWord};

/// Longest word length handled by the exact solvers.
pub const MAX_EXACT_LEN: usize = 10;

#[derive(Debug, Clone)]
pub struct TrifferentOptions {
    pub budget: Option<Duration>,
    pub threads: usize,
    /// Fix the first three words up to isometry instead of only translating
    /// the code to contain the zero word.
    pub symmetry: bool,
    /// Exact values fed to the bound composition used for cutoffs; they must
    /// not include the value being computed.
    pub known: BaseFacts,
}

impl Default for TrifferentOptions {
    fn default() -> Self {
        Self { budget: None, threads: 1, symmetry: true, known: BaseFacts::new() }
    }
}

/// Bit planes of every word of `{0,1,2}^n`, indexed in lexicographic order.
struct Words {
    n: usize,
    zeros: Vec<u16>,
    ones: Vec<u16>,
    twos: Vec<u16>,
}

impl Words {
    fn new(n: usize) -> Self {
        let total = 3usize.pow(n as u32);
        let (mut zeros, mut ones, mut twos) = (vec![0; total], vec![0; total], vec![0; total]);
        for w in 0..total {
            let mut c = w;
            // the last symbol is the least significant digit and bit 0
            for i in 0..n {
                let bit = 1u16 << i;
                match c % 3 {
                    0 => zeros[w] |= bit,
                    1 => ones[w] |= bit,
                    _ => twos[w] |= bit,
                }
                c /= 3;
            }
        }
        Self { n, zeros, ones, twos }
    }

    fn len(&self) -> usize {
        self.zeros.len()
    }

    fn symbol(&self, w: usize, i: usize) -> usize {
        let bit = 1u16 << i;
        if self.ones[w] & bit != 0 {
            1
        } else if self.twos[w] & bit != 0 {
            2
        } else {
            0
        }
    }

    #[inline]
    fn triffer(&self, a: usize, b: usize, c: usize) -> u32 {
        let z = self.zeros[a] | self.zeros[b] | self.zeros[c];
        let o = self.ones[a] | self.ones[b] | self.ones[c];
        let t = self.twos[a] | self.twos[b] | self.twos[c];
        (z & o & t).count_ones()
    }

    #[inline]
    fn distance(&self, a: usize, b: usize) -> u32 {
        let agree = (self.zeros[a] & self.zeros[b]) | (self.ones[a] & self.ones[b]) | (self.twos[a] & self.twos[b]);
        self.n as u32 - agree.count_ones()
    }

    fn index_of(&self, symbols: &[u8]) -> usize {
        symbols.iter().fold(0, |acc, &s| acc * 3 + s as usize)
    }

    fn word(&self, w: usize) -> TernaryWord {
        let s: Vec<u8> = (0..self.n).rev().map(|i| self.symbol(w, i) as u8).collect();
        TernaryWord::new(&s).expect("symbols in range")
    }
}

/// Limits and shared state for one solve.
struct Shared<'a> {
    words: &'a Words,
    m: u32,
    /// Certified upper bound on the optimum; reaching it ends the search.
    cap: usize,
    /// Upper bound on the projection of a code onto `n − 1` coordinates.
    proj_cap: Option<usize>,
    deadline: &'a Deadline,
    /// Best value found by any subtree; branches that cannot reach it are cut.
    global: AtomicUsize,
    /// Smallest subtree index that reached `cap`; later subtrees stop.
    capped: AtomicUsize,
}

struct Subtree {
    root: Vec<usize>,
    cand: Vec<usize>,
    /// Minimum pairwise distance enforced in this subtree.
    dist: u32,
}

struct Worker<'a> {
    sh: &'a Shared<'a>,
    index: usize,
    dist: u32,
    best: Vec<usize>,
    nodes: u64,
    stopped: bool,
}

impl Worker<'_> {
    fn need(&self) -> usize {
        (self.best.len() + 1).max(self.sh.global.load(Ordering::Relaxed))
    }

    fn should_stop(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if self.nodes % 256 == 0 && self.sh.deadline.check() || self.sh.capped.load(Ordering::Relaxed) < self.index {
            self.stopped = true;
        }
        self.stopped
    }

    fn dfs(&mut self, code: &mut Vec<usize>, cand: &[usize]) {
        self.nodes += 1;
        if code.len() > self.best.len() {
            self.best = code.clone();
            fetch_max(&self.sh.global, code.len());
            if code.len() >= self.sh.cap {
                fetch_min(&self.sh.capped, self.index);
                self.stopped = true;
                return;
            }
        }
        if self.should_stop() || cand.is_empty() {
            return;
        }
        let need = self.need();
        if code.len() + cand.len() < need || projection_bound(self.sh, code, cand) < need {
            return;
        }
        let w = self.sh.words;
        let mut next = Vec::with_capacity(cand.len());
        for i in 0..cand.len() {
            if code.len() + (cand.len() - i) < self.need() {
                break;
            }
            let x = cand[i];
            next.clear();
            next.extend(cand[i + 1..].iter().copied().filter(|&c| {
                w.distance(x, c) >= self.dist && code.iter().all(|&y| w.triffer(y, x, c) >= self.sh.m)
            }));
            code.push(x);
            let next_owned = std::mem::take(&mut next);
            self.dfs(code, &next_owned);
            next = next_owned;
            code.pop();
            if self.stopped {
                return;
            }
        }
    }
}

/// Upper bound on the final size from one coordinate: the words with a fixed
/// symbol there, and those using two symbols there, project injectively onto
/// codes of length `n − 1`.
fn projection_bound(sh: &Shared<'_>, code: &[usize], cand: &[usize]) -> usize {
    let total = code.len() + cand.len();
    let Some(t) = sh.proj_cap else { return total };
    let w = sh.words;
    let mut best = total;
    for i in 0..w.n {
        let bit = 1u16 << i;
        let mut c = [0usize; 3];
        for &x in code.iter().chain(cand) {
            if w.ones[x] & bit != 0 {
                c[1] += 1;
            } else if w.twos[x] & bit != 0 {
                c[2] += 1;
            } else {
                c[0] += 1;
            }
        }
        let mut s = c.map(|v| v.min(t));
        s.sort_unstable();
        let b = (s[0] + s[1] + s[2]).min(s[0] + t).min(3 * t / 2);
        best = best.min(b);
    }
    best
}

fn upper_cap(n: usize, m: usize, known: &BaseFacts) -> Result<(usize, usize)> {
    let b = best_bounds(n, m, known)?;
    let up = b.upper.integer_value.map_or(usize::MAX, |v| v as usize);
    let lo = b.lower.integer_value.map_or(3, |v| v as usize);
    Ok((up, lo))
}

fn check_params(n: usize, m: usize) -> Result<()> {
    if n == 0 || n > MAX_EXACT_LEN {
        return Err(out_of_range(format!("exact search supports 1 <= n <= {MAX_EXACT_LEN}, got {n}")));
    }
    if m == 0 || m > n {
        return Err(out_of_range(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    Ok(())
}

/// Type of a word relative to `a = 1^d 0^{n−d}` (the `d` most significant
/// coordinates): symbol counts inside the support of `a`, weight outside.
fn word_type(w: &Words, x: usize, d: usize) -> (usize, usize, usize, usize) {
    let n = w.n;
    let inside: u16 = if d == 0 { 0 } else { (((1u32 << d) - 1) << (n - d)) as u16 };
    let outside: u16 = ((1u32 << (n - d)) - 1) as u16;
    let c = |m: u16| (m & inside).count_ones() as usize;
    (c(w.zeros[x]), c(w.ones[x]), c(w.twos[x]), ((w.ones[x] | w.twos[x]) & outside).count_ones() as usize)
}

fn canonical_of_type(w: &Words, d: usize, ty: (usize, usize, usize, usize)) -> usize {
    let (n0, n1, n2, wt) = ty;
    let mut s = Vec::with_capacity(w.n);
    s.extend(std::iter::repeat_n(0u8, n0));
    s.extend(std::iter::repeat_n(1u8, n1));
    s.extend(std::iter::repeat_n(2u8, n2));
    s.extend(std::iter::repeat_n(1u8, wt));
    s.extend(std::iter::repeat_n(0u8, w.n - d - wt));
    w.index_of(&s)
}

fn subtrees(w: &Words, m: u32, symmetry: bool) -> Vec<Subtree> {
    let n = w.n;
    let all = 0..w.len();
    if !symmetry {
        // translate so that the zero word is in the code; branch on the second word
        let seconds: Vec<usize> = all.clone().filter(|&x| x > 0 && w.distance(0, x) >= m).collect();
        return seconds
            .iter()
            .enumerate()
            .map(|(i, &x)| Subtree {
                root: vec![0, x],
                cand: seconds[i + 1..].iter().copied().filter(|&c| w.distance(x, c) >= m && w.triffer(0, x, c) >= m).collect(),
                dist: m,
            })
            .collect();
    }
    // a closest pair maps to (0, 1^d 0^{n−d}); the third word is the smallest by type
    let mut out = Vec::new();
    for d in m as usize..=n {
        let a = w.index_of(&[vec![1u8; d], vec![0u8; n - d]].concat());
        let dist = d as u32;
        let mut types: Vec<(usize, usize, usize, usize)> = Vec::new();
        for n0 in 0..=d {
            for n1 in 0..=d - n0 {
                for wt in 0..=n - d {
                    types.push((n0, n1, d - n0 - n1, wt));
                }
            }
        }
        types.sort_unstable();
        for ty in types {
            let b = canonical_of_type(w, d, ty);
            if w.distance(0, b) < dist || w.distance(a, b) < dist || w.triffer(0, a, b) < m {
                continue;
            }
            let cand: Vec<usize> = all
                .clone()
                .filter(|&c| {
                    c != 0
                        && c != a
                        && c != b
                        && word_type(w, c, d) >= ty
                        && [0, a, b].iter().all(|&y| w.distance(y, c) >= dist)
                        && w.triffer(0, a, c) >= m
                        && w.triffer(0, b, c) >= m
                        && w.triffer(a, b, c) >= m
                })
                .collect();
            out.push(Subtree { root: vec![0, a, b], cand, dist });
        }
    }
    out
}

struct SubResult {
    best: Vec<usize>,
    nodes: u64,
    finished: bool,
    root_bound: usize,
}

fn solve(
    w: &Words,
    m: usize,
    trees: Vec<Subtree>,
    cap: usize,
    proj_cap: Option<usize>,
    lower: usize,
    opts: &TrifferentOptions,
    deadline: &Deadline,
) -> (Vec<usize>, u64, bool, usize) {
    let sh = Shared {
        words: w,
        m: m as u32,
        cap,
        proj_cap,
        deadline,
        global: AtomicUsize::new(lower),
        capped: AtomicUsize::new(usize::MAX),
    };
    let results: Vec<SubResult> = thread_pool(opts.threads).install(|| {
        trees
            .par_iter()
            .enumerate()
            .map(|(index, t)| {
                let root_bound = projection_bound(&sh, &t.root, &t.cand).min(t.root.len() + t.cand.len());
                let mut wk = Worker { sh: &sh, index, dist: t.dist, best: Vec::new(), nodes: 0, stopped: false };
                let mut code = t.root.clone();
                wk.dfs(&mut code, &t.cand);
                let finished = !deadline.expired() || !wk.stopped;
                SubResult { best: wk.best, nodes: wk.nodes, finished, root_bound }
            })
            .collect()
    });
    let capped = sh.capped.load(Ordering::Relaxed);
    let nodes = results.iter().map(|r| r.nodes).sum();
    // largest value, earliest subtree
    let mut best: Vec<usize> = Vec::new();
    for (i, r) in results.iter().enumerate() {
        if i > capped {
            break;
        }
        if r.best.len() > best.len() {
            best = r.best.clone();
        }
    }
    let complete = capped != usize::MAX && best.len() >= cap || results.iter().all(|r| r.finished);
    let frontier =
        results.iter().filter(|r| !r.finished).map(|r| r.root_bound).max().unwrap_or(0).max(best.len()).min(cap);
    (best, nodes, complete, frontier)
}

fn to_code(w: &Words, idx: &[usize]) -> TernaryCode {
    TernaryCode::new(w.n, idx.iter().map(|&x| w.word(x))).expect("words of length n")
}

/// Largest m-trifferent code of length `n`, by branch and bound.
pub fn max_trifferent_exact(n: usize, m: usize, opts: &TrifferentOptions) -> Result<SearchOutcome<TernaryCode>> {
    check_params(n, m)?;
    let deadline = Deadline::new(opts.budget);
    let w = Words::new(n);
    let (cap, lower) = upper_cap(n, m, &opts.known)?;
    let proj_cap = if m < n { Some(upper_cap(n - 1, m, &opts.known)?.0) } else { None };
    let trees = subtrees(&w, m as u32, opts.symmetry);
    let (best, nodes, complete, frontier) = solve(&w, m, trees, cap, proj_cap, lower, opts, &deadline);
    let code = to_code(&w, &best);
    debug_assert!(is_m_trifferent(&code, m)?.holds);
    Ok(SearchOutcome {
        value: best.len(),
        witness: Some(code),
        optimal: complete,
        feasible: true,
        frontier_bound: if complete { best.len() } else { frontier },
        nodes,
        seconds: deadline.seconds(),
        budget_hit: !complete,
    })
}

/// Largest m-trifferent code among the words with exactly `k_twos` symbols 2.
pub fn max_trifferent_slice(n: usize, m: usize, k_twos: usize, opts: &TrifferentOptions) -> Result<SearchOutcome<TernaryCode>> {
    check_params(n, m)?;
    if k_twos > n {
        return Err(out_of_range(format!("slice needs k_twos <= n, got {k_twos} > {n}")));
    }
    let deadline = Deadline::new(opts.budget);
    let w = Words::new(n);
    let slice: Vec<usize> = (0..w.len()).filter(|&x| w.twos[x].count_ones() as usize == k_twos).collect();
    // the slice is invariant under coordinate permutations and 0↔1 swaps,
    // which act transitively on it: fix the first word as 2^k 0^{n−k}
    let first = w.index_of(&[vec![2u8; k_twos], vec![0u8; n - k_twos]].concat());
    let mut trees = Vec::new();
    let rest: Vec<usize> = slice.iter().copied().filter(|&x| x != first).collect();
    for (i, &x) in rest.iter().enumerate() {
        let cand = rest[i + 1..].iter().copied().filter(|&c| w.triffer(first, x, c) >= m as u32).collect();
        trees.push(Subtree { root: vec![first, x], cand, dist: 0 });
    }
    let (mut best, nodes, complete, frontier) = if trees.is_empty() {
        (Vec::new(), 0, true, 0)
    } else {
        solve(&w, m, trees, usize::MAX, None, 0, opts, &deadline)
    };
    if best.is_empty() && !slice.is_empty() {
        best = vec![first];
    }
    Ok(SearchOutcome {
        value: best.len(),
        witness: Some(to_code(&w, &best)),
        optimal: complete,
        feasible: true,
        frontier_bound: if complete { best.len() } else { frontier.max(best.len()) },
        nodes,
        seconds: deadline.seconds(),
        budget_hit: !complete,
    })
}
