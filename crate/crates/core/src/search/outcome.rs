use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

/// Result of an exact search.
#[derive(Debug, Clone)]
pub struct SearchOutcome<W> {
    /// Best value found (largest code, or smallest blocking set).
    pub value: usize,
    /// Verified object achieving `value`; `None` only when infeasible.
    pub witness: Option<W>,
    /// The search space was exhausted, so `value` is the optimum.
    pub optimal: bool,
    /// `false` when the instance has no solution at all.
    pub feasible: bool,
    /// Certified bound on the optimum from the unexplored frontier: an upper
    /// bound for maximization, a lower bound for minimization.
    pub frontier_bound: usize,
    pub nodes: u64,
    pub seconds: f64,
    pub budget_hit: bool,
}

/// The JSON summary written by the command-line tool.
#[derive(Debug, Serialize)]
pub struct OutcomeSummary<'a> {
    pub value: usize,
    pub optimal: bool,
    pub witness_file: Option<&'a str>,
    pub nodes: u64,
    pub seconds: f64,
}

impl<W> SearchOutcome<W> {
    pub fn summary<'a>(&self, witness_file: Option<&'a str>) -> OutcomeSummary<'a> {
        OutcomeSummary { value: self.value, optimal: self.optimal, witness_file, nodes: self.nodes, seconds: self.seconds }
    }
}

/// Wall-clock budget shared by all workers of one search.
#[derive(Debug)]
pub(crate) struct Deadline {
    start: Instant,
    limit: Option<Duration>,
    expired: AtomicBool,
}

impl Deadline {
    pub(crate) fn new(limit: Option<Duration>) -> Self {
        Self { start: Instant::now(), limit, expired: AtomicBool::new(false) }
    }

    /// Checks the clock; once expired, stays expired.
    pub(crate) fn check(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        if self.limit.is_some_and(|l| self.start.elapsed() >= l) {
            self.expired.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    pub(crate) fn expired(&self) -> bool {
        self.expired.load(Ordering::Relaxed)
    }

    pub(crate) fn seconds(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

/// Lowers an atomic to `min(current, v)`.
pub(crate) fn fetch_min(a: &AtomicUsize, v: usize) {
    a.fetch_min(v, Ordering::Relaxed);
}

/// Raises an atomic to `max(current, v)`.
pub(crate) fn fetch_max(a: &AtomicUsize, v: usize) {
    a.fetch_max(v, Ordering::Relaxed);
}

pub(crate) fn thread_pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool")
}
