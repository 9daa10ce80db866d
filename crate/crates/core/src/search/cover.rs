use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::outcome::{fetch_min, thread_pool, Deadline, SearchOutcome};
use crate::error::{out_of_range, Error, Result};
use crate::geometry::{enumerate_affine_targets, enumerate_points, AffineSubspace, PointMultiset, ProjectivePoint};

/// The covering program behind minimum strong blocking sets: one variable
/// per point of `PG(k−1,3)`, one row per affine target.
#[derive(Debug, Clone)]
pub struct CoverInstance {
    pub k: usize,
    pub m: usize,
    pub points: Vec<ProjectivePoint>,
    pub targets: Vec<AffineSubspace>,
    /// Bit `i` of `incidence[j]` is set when a nonzero multiple of point `i`
    /// lies in target `j`.
    pub incidence: Vec<u128>,
}

pub fn build_cover_instance(k: usize, m: usize) -> Result<CoverInstance> {
    if !(2..=5).contains(&k) {
        return Err(out_of_range(format!("cover instances support 2 <= k <= 5, got {k}")));
    }
    if m == 0 {
        return Err(out_of_range("strength must be at least 1"));
    }
    let points = enumerate_points(k);
    let targets = enumerate_affine_targets(k)?;
    let incidence = targets
        .iter()
        .map(|t| {
            points.iter().enumerate().fold(0u128, |acc, (i, p)| {
                let twice: Vec<u8> = p.coords().iter().map(|&x| (2 * x) % 3).collect();
                if t.contains(p.coords()) || t.contains(&twice) {
                    acc | 1 << i
                } else {
                    acc
                }
            })
        })
        .collect();
    Ok(CoverInstance { k, m, points, targets, incidence })
}

/// The instance as a 0/1 program in LP text format.
pub fn lp_text(instance: &CoverInstance) -> String {
    let n = instance.points.len();
    let var = |i: usize| format!("x{}", i + 1);
    let sum = |bits: u128| {
        let terms: Vec<String> = (0..n).filter(|&i| bits >> i & 1 == 1).map(var).collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    };
    let all = if n == 0 { 0 } else { u128::MAX >> (128 - n) };
    let mut s = String::new();
    let _ = writeln!(s, "Minimize");
    let _ = writeln!(s, " obj: {}", sum(all));
    let _ = writeln!(s, "Subject To");
    for (j, row) in instance.incidence.iter().enumerate() {
        let _ = writeln!(s, " c{}: {} >= {}", j + 1, sum(*row), instance.m);
    }
    let _ = writeln!(s, "Binary");
    for i in 0..n {
        let _ = writeln!(s, " {}", var(i));
    }
    let _ = writeln!(s, "End");
    s
}

pub fn export_lp(instance: &CoverInstance, path: &Path) -> Result<()> {
    std::fs::write(path, lp_text(instance))?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BlockingOptions {
    pub budget: Option<Duration>,
    pub threads: usize,
    /// Largest multiplicity allowed per point; 1 asks for sets.
    pub max_multiplicity: u32,
}

impl Default for BlockingOptions {
    fn default() -> Self {
        Self { budget: None, threads: 1, max_multiplicity: 1 }
    }
}

/// Deduplicated rows and the rows through each point.
struct Model {
    n: usize,
    rows: Vec<u128>,
    rows_of: Vec<Vec<u16>>,
    m: u16,
}

impl Model {
    fn new(instance: &CoverInstance) -> Self {
        let mut rows = instance.incidence.clone();
        rows.sort_unstable();
        rows.dedup();
        let n = instance.points.len();
        let mut rows_of = vec![Vec::new(); n];
        for (r, &row) in rows.iter().enumerate() {
            for (p, list) in rows_of.iter_mut().enumerate() {
                if row >> p & 1 == 1 {
                    list.push(r as u16);
                }
            }
        }
        Self { n, rows, rows_of, m: instance.m as u16 }
    }
}

#[derive(Clone)]
struct State {
    x: Vec<u8>,
    /// Further increments still allowed per point.
    room: Vec<u8>,
    /// Points with `room > 0`.
    free: u128,
    resid: Vec<u16>,
    open: usize,
    total: usize,
}

fn bits(mut v: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if v == 0 {
            return None;
        }
        let i = v.trailing_zeros() as usize;
        v &= v - 1;
        Some(i)
    })
}

impl State {
    fn new(model: &Model, cap: u8) -> Self {
        let free = if model.n == 0 { 0 } else { u128::MAX >> (128 - model.n) };
        let resid = vec![model.m; model.rows.len()];
        let open = resid.iter().filter(|&&r| r > 0).count();
        Self { x: vec![0; model.n], room: vec![cap; model.n], free, resid, open, total: 0 }
    }

    fn add(&mut self, model: &Model, p: usize, times: u8) {
        self.x[p] += times;
        self.room[p] -= times;
        if self.room[p] == 0 {
            self.free &= !(1 << p);
        }
        self.total += times as usize;
        for &r in &model.rows_of[p] {
            let r = r as usize;
            if self.resid[r] > 0 {
                self.resid[r] = self.resid[r].saturating_sub(times as u16);
                if self.resid[r] == 0 {
                    self.open -= 1;
                }
            }
        }
    }

    fn freeze(&mut self, p: usize) {
        self.room[p] = 0;
        self.free &= !(1 << p);
    }

    fn capacity(&self, row: u128, unit: bool) -> usize {
        let f = row & self.free;
        if unit {
            f.count_ones() as usize
        } else {
            bits(f).map(|p| self.room[p] as usize).sum()
        }
    }

    /// Fills rows whose remaining capacity equals their demand; `false`
    /// when some row can no longer be satisfied.
    fn propagate(&mut self, model: &Model, unit: bool) -> bool {
        loop {
            let mut changed = false;
            for r in 0..model.rows.len() {
                let need = self.resid[r] as usize;
                if need == 0 {
                    continue;
                }
                let cap = self.capacity(model.rows[r], unit);
                if cap < need {
                    return false;
                }
                if cap == need {
                    for p in bits(model.rows[r] & self.free) {
                        let t = self.room[p];
                        self.add(model, p, t);
                    }
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Number of open rows through `p`.
    fn degree(&self, model: &Model, p: usize) -> usize {
        model.rows_of[p].iter().filter(|&&r| self.resid[r as usize] > 0).count()
    }

    /// Lower bound on the increments still needed: the larger of a packing
    /// of rows with disjoint free points and a fractional count (each
    /// increment lowers the total residual demand by at most its degree).
    fn lower_bound(&self, model: &Model) -> usize {
        let mut used = 0u128;
        let mut packing = 0usize;
        let mut demand = 0usize;
        for (r, &row) in model.rows.iter().enumerate() {
            let need = self.resid[r] as usize;
            if need == 0 {
                continue;
            }
            demand += need;
            let f = row & self.free;
            if f & used == 0 {
                used |= f;
                packing += need;
            }
        }
        let mut degs: Vec<(usize, u8)> =
            bits(self.free).map(|p| (self.degree(model, p), self.room[p])).filter(|&(d, _)| d > 0).collect();
        degs.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut fractional = 0usize;
        let mut covered = 0usize;
        'outer: for (d, room) in degs {
            for _ in 0..room {
                if covered >= demand {
                    break 'outer;
                }
                covered += d;
                fractional += 1;
            }
        }
        packing.max(fractional)
    }

    /// Open row with the least spare capacity, ties to the larger demand.
    fn branch_row(&self, model: &Model, unit: bool) -> usize {
        let mut best = (usize::MAX, 0usize, 0usize);
        for r in 0..model.rows.len() {
            let need = self.resid[r] as usize;
            if need == 0 {
                continue;
            }
            let slack = self.capacity(model.rows[r], unit) - need;
            if slack < best.0 || slack == best.0 && need > best.1 {
                best = (slack, need, r);
            }
        }
        best.2
    }

    /// Children of the "first incremented point" partition of a row, points
    /// ordered by decreasing degree.
    fn children(&self, model: &Model, unit: bool) -> Vec<State> {
        let r = self.branch_row(model, unit);
        let need = self.resid[r] as usize;
        let mut pts: Vec<(usize, usize)> = bits(model.rows[r] & self.free).map(|p| (self.degree(model, p), p)).collect();
        pts.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut rest: usize = pts.iter().map(|&(_, p)| self.room[p] as usize).sum();
        let mut out = Vec::with_capacity(pts.len());
        let mut base = self.clone();
        for &(_, p) in &pts {
            if rest < need {
                break;
            }
            let mut child = base.clone();
            child.add(model, p, 1);
            out.push(child);
            rest -= self.room[p] as usize;
            base.freeze(p);
        }
        out
    }
}

struct Shared<'a> {
    model: &'a Model,
    unit: bool,
    deadline: &'a Deadline,
    /// Best value per root child; `bests[0]` is the greedy incumbent.
    bests: Vec<AtomicUsize>,
}

struct Worker<'a> {
    sh: &'a Shared<'a>,
    /// Slot in `bests`.
    slot: usize,
    best: Option<Vec<u8>>,
    nodes: u64,
    stopped: bool,
}

impl Worker<'_> {
    /// Values at or above this cannot win the merge: earlier slots win ties,
    /// later slots only strict improvements.
    fn limit(&self) -> (usize, usize) {
        let bests = &self.sh.bests;
        let earlier = bests[..=self.slot].iter().map(|b| b.load(Ordering::Relaxed)).min().unwrap_or(usize::MAX);
        let later = bests[self.slot + 1..].iter().map(|b| b.load(Ordering::Relaxed)).min().unwrap_or(usize::MAX);
        (earlier, later)
    }

    fn prunable(&self, value: usize) -> bool {
        let (earlier, later) = self.limit();
        value >= earlier || value > later
    }

    fn dfs(&mut self, mut st: State) {
        self.nodes += 1;
        if self.stopped || self.nodes % 1024 == 0 && self.sh.deadline.check() {
            self.stopped = true;
            return;
        }
        let (model, unit) = (self.sh.model, self.sh.unit);
        if !st.propagate(model, unit) || self.prunable(st.total) {
            return;
        }
        if st.open == 0 {
            fetch_min(&self.sh.bests[self.slot], st.total);
            self.best = Some(st.x);
            return;
        }
        if self.prunable(st.total + st.lower_bound(model)) {
            return;
        }
        for child in st.children(model, unit) {
            self.dfs(child);
            if self.stopped {
                return;
            }
        }
    }
}

/// Greedy cover from `st`, then drops redundant increments.
fn greedy(model: &Model, mut st: State) -> Vec<u8> {
    while st.open > 0 {
        let p = bits(st.free).max_by_key(|&p| (st.degree(model, p), std::cmp::Reverse(p))).expect("feasible instance");
        st.add(model, p, 1);
    }
    let mut x = st.x;
    for p in (0..model.n).rev() {
        while x[p] > 0 {
            x[p] -= 1;
            if !covers(model, &x) {
                x[p] += 1;
                break;
            }
        }
    }
    x
}

fn covers(model: &Model, x: &[u8]) -> bool {
    model.rows.iter().all(|&row| bits(row).map(|p| x[p] as usize).sum::<usize>() >= model.m as usize)
}

fn to_multiset(instance: &CoverInstance, x: &[u8]) -> PointMultiset {
    let mut s = PointMultiset::new(instance.k);
    for (p, &c) in instance.points.iter().zip(x) {
        s.insert(p.clone(), c as u32).expect("points of the instance");
    }
    s
}

/// Smallest strength-`m` strong blocking set (or multiset, when
/// `max_multiplicity > 1`) in `PG(k−1,3)`, by branch and bound.
///
/// Blocking sets span, and the collineation group is transitive on ordered
/// bases, so the unit vectors are fixed in the solution.
pub fn min_blocking_exact(k: usize, m: usize, opts: &BlockingOptions) -> Result<SearchOutcome<PointMultiset>> {
    if opts.max_multiplicity == 0 || opts.max_multiplicity > 64 {
        return Err(out_of_range("multiplicity cap must be in 1..=64"));
    }
    let instance = build_cover_instance(k, m)?;
    let deadline = Deadline::new(opts.budget);
    let cap = (opts.max_multiplicity as usize).min(m) as u8;
    if m > cap as usize * 3usize.pow(k as u32 - 2) {
        return Ok(SearchOutcome {
            value: 0,
            witness: None,
            optimal: true,
            feasible: false,
            frontier_bound: 0,
            nodes: 0,
            seconds: deadline.seconds(),
            budget_hit: false,
        });
    }
    let model = Model::new(&instance);
    let unit = cap == 1;
    let mut root = State::new(&model, cap);
    for i in 0..k {
        let mut e = vec![0u8; k];
        e[i] = 1;
        let p = instance.points.iter().position(|q| q.coords() == e.as_slice()).expect("unit vectors are points");
        root.add(&model, p, 1);
    }
    let incumbent = greedy(&model, root.clone());
    let greedy_value = incumbent.iter().map(|&c| c as usize).sum::<usize>();

    let children = if root.propagate(&model, unit) && root.open > 0 { root.children(&model, unit) } else { Vec::new() };
    let mut bests: Vec<AtomicUsize> = vec![AtomicUsize::new(greedy_value)];
    bests.extend(children.iter().map(|_| AtomicUsize::new(usize::MAX)));
    // the root itself may already be a cover
    if root.open == 0 && root.total < greedy_value {
        bests[0] = AtomicUsize::new(root.total);
    }
    let sh = Shared { model: &model, unit, deadline: &deadline, bests };
    let results: Vec<(Option<Vec<u8>>, u64, bool, usize)> = thread_pool(opts.threads).install(|| {
        children
            .into_par_iter()
            .enumerate()
            .map(|(i, child)| {
                let mut probe = child.clone();
                let root_lb = if probe.propagate(&model, unit) {
                    probe.total + probe.lower_bound(&model)
                } else {
                    usize::MAX
                };
                let mut w = Worker { sh: &sh, slot: i + 1, best: None, nodes: 0, stopped: false };
                w.dfs(child);
                (w.best, w.nodes, !w.stopped, root_lb)
            })
            .collect()
    });

    let mut best = if root.open == 0 && root.total < greedy_value { root.x.clone() } else { incumbent };
    let mut value = best.iter().map(|&c| c as usize).sum::<usize>();
    let mut nodes = 1;
    for (found, n, _, _) in &results {
        nodes += n;
        if let Some(x) = found {
            let v = x.iter().map(|&c| c as usize).sum::<usize>();
            if v < value {
                value = v;
                best = x.clone();
            }
        }
    }
    let complete = results.iter().all(|r| r.2);
    let frontier = results.iter().filter(|r| !r.2).map(|r| r.3).min().unwrap_or(usize::MAX).min(value);
    let witness = to_multiset(&instance, &best);
    Ok(SearchOutcome {
        value,
        witness: Some(witness),
        optimal: complete,
        feasible: true,
        frontier_bound: if complete { value } else { frontier },
        nodes,
        seconds: deadline.seconds(),
        budget_hit: !complete,
    })
}

/// Known minimum sizes of strength-`m` strong blocking multisets in
/// `PG(k−1,3)`, keyed by `(k, m)`.
#[derive(Debug, Clone, Default)]
pub struct BlockingOptima {
    values: BTreeMap<(usize, usize), usize>,
}

impl BlockingOptima {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, k: usize, m: usize, value: usize) {
        self.values.insert((k, m), value);
    }

    /// The one-dimensional case needs `m` copies of the single point.
    pub fn get(&self, k: usize, m: usize) -> Option<usize> {
        if k == 1 {
            return Some(m);
        }
        self.values.get(&(k, m)).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFact {
    pub n: usize,
    pub m: usize,
    pub dimension: usize,
    /// `T_L(n,m) = 3^dimension`.
    pub value: BigUint,
}

/// `T_L(n,m)` from blocking-multiset optima: the largest `k` whose optimum is
/// at most `n`. Dimensions beyond the known data are excluded when
/// `4(k−1) + m − 1 > n`: every `n − m + 1` columns of an m-trifferent code
/// form a strong blocking set, and those have at least `4(k−1)` points.
pub fn tl_from_blocking(n: usize, m: usize, optima: &BlockingOptima) -> Result<LinearFact> {
    if m == 0 || m > n {
        return Err(out_of_range(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    let mut k = 1;
    loop {
        let next = k + 1;
        let exceeds = match optima.get(next, m) {
            Some(v) => v > n,
            None if 4 * (next - 1) + m - 1 > n => true,
            None => {
                return Err(Error::InsufficientData(format!("no blocking optimum known for k={next}, m={m}")))
            }
        };
        if exceeds {
            // optima are nondecreasing in k: a subcode keeps the length
            return Ok(LinearFact { n, m, dimension: k, value: BigUint::from(3u32).pow(k as u32) });
        }
        k = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{affine_block_count, is_strength_blocking};

    #[test]
    fn instance_shapes() {
        let i3 = build_cover_instance(3, 2).unwrap();
        assert_eq!((i3.points.len(), i3.targets.len()), (13, 104));
        let i4 = build_cover_instance(4, 2).unwrap();
        assert_eq!((i4.points.len(), i4.targets.len()), (40, 1040));
        assert!(build_cover_instance(6, 1).is_err());
        assert!(build_cover_instance(1, 1).is_err());
    }

    #[test]
    fn incidence_matches_block_counts() {
        for k in 2..=4 {
            let inst = build_cover_instance(k, 1).unwrap();
            for (p, pt) in inst.points.iter().enumerate() {
                let single = PointMultiset::from_points(k, [pt.clone()]).unwrap();
                let by_count = inst.targets.iter().filter(|t| affine_block_count(&single, t).unwrap() > 0).count();
                let by_bits = inst.incidence.iter().filter(|&&row| row >> p & 1 == 1).count();
                assert_eq!(by_count, by_bits);
            }
            for row in &inst.incidence {
                assert_eq!(row.count_ones(), 3u32.pow(k as u32 - 2));
            }
        }
    }

    #[test]
    fn small_optima() {
        let o = BlockingOptions::default();
        assert_eq!(min_blocking_exact(2, 1, &o).unwrap().value, 4);
        let r = min_blocking_exact(3, 1, &o).unwrap();
        assert!(r.optimal);
        assert!(is_strength_blocking(r.witness.as_ref().unwrap(), 1).unwrap().holds);
        let r = min_blocking_exact(3, 2, &o).unwrap();
        assert_eq!(r.value, 12);
        assert!(r.optimal);
        let r = min_blocking_exact(3, 4, &o).unwrap();
        assert!(!r.feasible && r.witness.is_none());
        let multi = BlockingOptions { max_multiplicity: 2, ..o };
        assert_eq!(min_blocking_exact(2, 2, &multi).unwrap().value, 8);
    }

    #[test]
    fn lp_text_layout() {
        let inst = build_cover_instance(3, 2).unwrap();
        let text = lp_text(&inst);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "Minimize");
        assert!(lines[1].starts_with(" obj: x1 + x2"));
        assert_eq!(lines[2], "Subject To");
        assert_eq!(lines.iter().filter(|l| l.starts_with(" c")).count(), 104);
        assert!(lines[3].ends_with(">= 2"));
        assert_eq!(lines[3 + 104], "Binary");
        assert_eq!(lines[3 + 105], " x1");
        assert_eq!(*lines.last().unwrap(), "End");
        let empty = CoverInstance { k: 3, m: 1, points: enumerate_points(3), targets: vec![], incidence: vec![] };
        assert_eq!(lp_text(&empty).lines().filter(|l| l.starts_with(" c")).count(), 0);
    }

    #[test]
    fn linear_facts() {
        let mut o = BlockingOptima::new();
        o.insert(2, 2, 8);
        o.insert(3, 2, 12);
        o.insert(4, 2, 16);
        for n in 12..=15 {
            assert_eq!(tl_from_blocking(n, 2, &o).unwrap().value, BigUint::from(27u32));
        }
        assert_eq!(tl_from_blocking(16, 2, &o).unwrap().dimension, 4);
        assert_eq!(tl_from_blocking(11, 2, &o).unwrap().value, BigUint::from(9u32));
        let mut partial = BlockingOptima::new();
        partial.insert(2, 2, 8);
        assert!(matches!(tl_from_blocking(12, 2, &partial), Err(Error::InsufficientData(_))));
        assert!(matches!(tl_from_blocking(11, 2, &BlockingOptima::new()), Err(Error::InsufficientData(_))));
    }
}
