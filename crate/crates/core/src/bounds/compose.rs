use std::collections::BTreeMap;

use serde::Serialize;

use super::closed_form::{
    constant_bound_exact, linear_bounds, lower_bound_alteration, upper_bound_aux_graph, upper_bound_piecewise,
    upper_bound_refined, upper_bound_slice, upper_bound_small_m,
};
use super::value::{BoundValue, Direction};
use crate::error::{out_of_range, Result};

/// How far the recursion tables reach below `n` (and around `m`). Cells at
/// the edge of the window use closed forms only, which keeps them valid.
const WINDOW: usize = 24;

/// Exactly known values of `T(n,m)`.
#[derive(Debug, Clone, Default)]
pub struct BaseFacts {
    values: BTreeMap<(usize, usize), u64>,
}

impl BaseFacts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Values obtained by direct computation: `T(4,2) = 4`,
    /// `T(5,2) = T(6,2) = 6`, `T(4,3) = T(5,3) = 3`, `T(6,3) = T(7,3) = 4`.
    pub fn published() -> Self {
        let mut f = Self::new();
        for (n, m, v) in [(4, 2, 4), (5, 2, 6), (6, 2, 6), (4, 3, 3), (5, 3, 3), (6, 3, 4), (7, 3, 4)] {
            f.insert(n, m, v);
        }
        f
    }

    pub fn insert(&mut self, n: usize, m: usize, value: u64) {
        self.values.insert((n, m), value);
    }

    pub fn get(&self, n: usize, m: usize) -> Option<u64> {
        self.values.get(&(n, m)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.values.iter().map(|(&(n, m), &v)| (n, m, v))
    }
}

/// Best certified bounds on `T(n,m)` with the chain of steps that produced each side.
#[derive(Debug, Clone, Serialize)]
pub struct BestBounds {
    pub n: usize,
    pub m: usize,
    pub lower: BoundValue,
    pub upper: BoundValue,
    pub lower_chain: Vec<String>,
    pub upper_chain: Vec<String>,
}

#[derive(Clone)]
struct Cell {
    bound: BoundValue,
    chain: Vec<String>,
}

impl Cell {
    fn leaf(bound: BoundValue) -> Self {
        let chain = vec![bound.provenance.clone()];
        Self { bound, chain }
    }

    fn step(bound: BoundValue, from: &Cell) -> Self {
        let mut chain = vec![bound.provenance.clone()];
        chain.extend(from.chain.iter().cloned());
        Self { bound, chain }
    }
}

/// Keeps `cand` only if strictly tighter, so earlier candidates win ties.
fn offer(best: &mut Option<Cell>, cand: Cell) {
    debug_assert!(cand.bound.constant_known);
    let better = match best {
        None => true,
        Some(cur) => {
            let tighter = cand.bound.at_least_as_tight(&cur.bound);
            let equal = cand.bound.integer_value.is_some() && cand.bound.integer_value == cur.bound.integer_value
                || cand.bound.integer_value.is_none()
                    && cur.bound.integer_value.is_none()
                    && cand.bound.log2_value == cur.bound.log2_value;
            tighter && !equal
        }
    };
    if better {
        *best = Some(cand);
    }
}

fn closed_upper(n: usize, m: usize, facts: &BaseFacts) -> Option<Cell> {
    let mut best = None;
    if m == n {
        offer(&mut best, Cell::leaf(BoundValue::upper_int(3, format!("T({n},{n}) = 3"))));
    }
    // T is nondecreasing in n and nonincreasing in m
    for (fn_, fm, v) in facts.iter() {
        if fn_ >= n && fm <= m {
            offer(&mut best, Cell::leaf(BoundValue::upper_int(v, format!("exact value T({fn_},{fm}) = {v}"))));
        }
    }
    if 9 * m > 2 * n {
        if let Ok(t) = constant_bound_exact(n, m) {
            offer(&mut best, Cell::leaf(BoundValue::upper_int(t, format!("constant regime at m/n = {m}/{n}"))));
        }
    }
    if n <= 40 {
        offer(&mut best, Cell::leaf(BoundValue::upper_int(3u64.pow(n as u32), format!("all 3^{n} words"))));
    }
    let forms = [
        upper_bound_piecewise(n, m),
        if (2..=3).contains(&m) { upper_bound_small_m(n, m) } else { Err(out_of_range(String::new())) },
        upper_bound_slice(n, m),
        upper_bound_refined(n, m),
        if m % 2 == 1 { upper_bound_aux_graph(n, m / 2) } else { Err(out_of_range(String::new())) },
    ];
    for b in forms.into_iter().flatten() {
        if b.constant_known {
            offer(&mut best, Cell::leaf(b));
        }
    }
    best
}

fn scale_three_halves(b: &BoundValue, provenance: String) -> BoundValue {
    match b.integer_value.and_then(|v| v.checked_mul(3)) {
        Some(v3) => BoundValue::upper_int(v3 / 2, provenance),
        None => BoundValue::upper_log2(b.log2_value + 1.5f64.log2(), provenance, true),
    }
}

fn relabel(b: &BoundValue, provenance: String) -> BoundValue {
    BoundValue { provenance, ..b.clone() }
}

fn upper_table(n: usize, m: usize, facts: &BaseFacts) -> Cell {
    let lo_n = n.saturating_sub(WINDOW).max(1);
    let lo_m = m.saturating_sub(WINDOW).max(1);
    let mut table: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
    for nn in lo_n..=n {
        for mm in lo_m..=m.min(nn) {
            let mut best = closed_upper(nn, mm, facts);
            if mm >= 2 {
                if let Some(prev) = table.get(&(nn - 1, mm - 1)) {
                    let b = relabel(&prev.bound, format!("T({nn},{mm}) <= T({},{})", nn - 1, mm - 1));
                    offer(&mut best, Cell::step(b, prev));
                }
            }
            if mm < nn {
                if let Some(prev) = table.get(&(nn - 1, mm)) {
                    let b = scale_three_halves(&prev.bound, format!("T({nn},{mm}) <= 3/2 T({},{mm})", nn - 1));
                    offer(&mut best, Cell::step(b, prev));
                }
            }
            if mm > lo_m {
                if let Some(prev) = table.get(&(nn, mm - 1)) {
                    let b = relabel(&prev.bound, format!("T({nn},{mm}) <= T({nn},{})", mm - 1));
                    offer(&mut best, Cell::step(b, prev));
                }
            }
            table.insert((nn, mm), best.expect("3^n or a closed form always applies"));
        }
    }
    table.remove(&(n, m)).expect("target cell computed")
}

fn closed_lower(n: usize, m: usize, facts: &BaseFacts) -> Option<Cell> {
    let mut best = None;
    offer(&mut best, Cell::leaf(BoundValue::lower_int(3, "three words with pairwise distinct symbols everywhere")));
    // lifting a code of length n' by r multiplies trifference counts by r
    for (fn_, fm, v) in facts.iter() {
        let r_min = m.div_ceil(fm).max(1);
        let r_max = n / fn_;
        if r_min <= r_max {
            let prov = if r_min == 1 {
                format!("exact value T({fn_},{fm}) = {v}")
            } else {
                format!("{r_min}-fold repetition of a T({fn_},{fm}) = {v} code")
            };
            offer(&mut best, Cell::leaf(BoundValue::lower_int(v, prov)));
        }
    }
    if let Ok(b) = lower_bound_alteration(n, m) {
        offer(&mut best, Cell::leaf(b));
    }
    if 9 * m < 2 * n {
        if let Ok(lb) = linear_bounds(n, m) {
            offer(&mut best, Cell::leaf(lb.lower));
        }
    }
    best
}

fn lower_table(n: usize, m: usize, facts: &BaseFacts) -> Cell {
    let lo_n = n.saturating_sub(WINDOW).max(m);
    let mut table: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
    for nn in lo_n..=n {
        let hi_m = nn.min(m + WINDOW);
        for mm in (m..=hi_m).rev() {
            let mut best = closed_lower(nn, mm, facts);
            if let Some(prev) = table.get(&(nn - 1, mm)) {
                let b = relabel(&prev.bound, format!("T({nn},{mm}) >= T({},{mm}) (append a constant coordinate)", nn - 1));
                offer(&mut best, Cell::step(b, prev));
            }
            if let Some(prev) = table.get(&(nn, mm + 1)) {
                let b = relabel(&prev.bound, format!("T({nn},{mm}) >= T({nn},{})", mm + 1));
                offer(&mut best, Cell::step(b, prev));
            }
            table.insert((nn, mm), best.expect("the trivial bound always applies"));
        }
    }
    table.remove(&(n, m)).expect("target cell computed")
}

/// Combines closed forms, coordinate recursions and exact base facts into
/// the tightest certified bounds on `T(n,m)`.
pub fn best_bounds(n: usize, m: usize, facts: &BaseFacts) -> Result<BestBounds> {
    if m == 0 || m > n {
        return Err(out_of_range(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    let up = upper_table(n, m, facts);
    let lo = lower_table(n, m, facts);
    debug_assert_eq!(up.bound.direction, Direction::Upper);
    Ok(BestBounds { n, m, lower: lo.bound, upper: up.bound, lower_chain: lo.chain, upper_chain: up.chain })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_three() {
        for n in 1..=12 {
            let b = best_bounds(n, n, &BaseFacts::new()).unwrap();
            assert_eq!(b.upper.integer_value, Some(3), "n={n}");
            assert_eq!(b.lower.integer_value, Some(3), "n={n}");
        }
    }

    #[test]
    fn published_facts_are_sandwiched() {
        let facts = BaseFacts::published();
        for (n, m, v) in facts.iter() {
            let b = best_bounds(n, m, &BaseFacts::new()).unwrap();
            assert!(b.lower.integer_value.unwrap() <= v && v <= b.upper.integer_value.unwrap(), "({n},{m})");
            let b = best_bounds(n, m, &facts).unwrap();
            assert_eq!(b.lower.integer_value, Some(v));
            assert_eq!(b.upper.integer_value, Some(v));
        }
        let b = best_bounds(6, 3, &BaseFacts::new()).unwrap();
        assert!(b.lower.integer_value.unwrap() <= 4 && 4 <= b.upper.integer_value.unwrap());
    }

    #[test]
    fn repetition_lift_raises_lower_bound() {
        let mut facts = BaseFacts::new();
        facts.insert(3, 1, 6);
        let b = best_bounds(12, 4, &facts).unwrap();
        assert!(b.lower.integer_value.unwrap() >= 6);
        assert!(b.lower_chain.iter().any(|s| s.contains("repetition")));
    }

    #[test]
    fn recursion_chain_is_recorded() {
        let b = best_bounds(7, 2, &BaseFacts::published()).unwrap();
        assert_eq!(b.upper.integer_value, Some(9), "{:?}", b.upper_chain);
        assert!(b.upper_chain.len() >= 2, "{:?}", b.upper_chain);
        let b = best_bounds(100, 10, &BaseFacts::new()).unwrap();
        assert!(b.lower.log2_value <= b.upper.log2_value);
        assert!(!b.upper_chain.is_empty() && !b.lower_chain.is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(best_bounds(3, 4, &BaseFacts::new()).is_err());
        assert!(best_bounds(3, 0, &BaseFacts::new()).is_err());
    }
}
