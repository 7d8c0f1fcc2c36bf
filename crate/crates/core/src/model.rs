//! The abstract cost-list model and a synthetic query oracle.
//!
//! A [`ValueList`] stands in for the multiset of f-costs of a search space:
//! `n(C)` counts the values `<= C`, and the critical cost of a budget `b` is
//! the smallest value at which `n` exceeds `b`. [`SyntheticQuery`] answers
//! budgeted queries directly from the list under each feedback model, which
//! lets the drivers be tested against the expansion bounds without any real
//! search underneath.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::cost::{Cost, CostInterval};
use crate::query::{Budget, BudgetedQuery, QueryOutcome, Solution};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("value {0} is below 1 or not a number")]
    InvalidValue(f64),
    #[error("optimal cost {0} is not an element of the list")]
    NotInList(Cost),
    #[error("line {line}: cannot parse {text:?} as a cost")]
    Parse { line: usize, text: String },
}

/// A sorted multiset of costs, each at least 1.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValueList {
    values: Vec<Cost>,
}

impl ValueList {
    /// Sorts the input. Fails on values below 1 or NaN.
    pub fn new(values: impl IntoIterator<Item = f64>) -> Result<ValueList, ModelError> {
        let mut out = Vec::new();
        for v in values {
            if v.is_nan() || v < 1.0 {
                return Err(ModelError::InvalidValue(v));
            }
            out.push(Cost::new(v));
        }
        out.sort();
        Ok(ValueList { values: out })
    }

    pub fn values(&self) -> &[Cost] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<Cost> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<Cost> {
        self.values.last().copied()
    }

    pub fn contains(&self, c: Cost) -> bool {
        self.values.binary_search(&c).is_ok()
    }

    /// `n(C)`: number of values `<= C`, duplicates counted separately.
    pub fn count_leq(&self, c: Cost) -> usize {
        self.values.partition_point(|&v| v <= c)
    }

    /// Smallest value `v` with `n(v) > b`, or `+∞` when the budget is never
    /// exceeded.
    pub fn c_crit(&self, b: Budget) -> Cost {
        usize::try_from(b)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or(Cost::INFINITY)
    }

    /// `(⌊C⌋_A, ⌈C⌉_A)`: the largest value `<= C` (0 when there is none) and
    /// the smallest value `> C` (`+∞` when there is none).
    pub fn gap_bounds(&self, c: Cost) -> (Cost, Cost) {
        let i = self.count_leq(c);
        let floor = if i == 0 { Cost::ZERO } else { self.values[i - 1] };
        let ceil = self.values.get(i).copied().unwrap_or(Cost::INFINITY);
        (floor, ceil)
    }

    /// `δ(C) = ⌈C⌉_A − ⌊C⌋_A`. Infinite when `C >= max A`.
    pub fn delta(&self, c: Cost) -> Cost {
        let (floor, ceil) = self.gap_bounds(c);
        if ceil.is_infinite() {
            Cost::INFINITY
        } else {
            ceil - floor
        }
    }

    /// Smallest gap between consecutive distinct values, over values `<= c_star`
    /// that have a successor in the list. `+∞` if there is no such gap.
    pub fn delta_min(&self, c_star: Cost) -> Cost {
        let mut best = Cost::INFINITY;
        for w in self.values.windows(2) {
            if w[0] > c_star {
                break;
            }
            if w[1] > w[0] {
                best = best.min(w[1] - w[0]);
            }
        }
        best
    }

    /// One value per line, in shortest round-trip decimal form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.values {
            let _ = writeln!(out, "{}", v.get());
        }
        out
    }

    /// Parses the [`ValueList::to_text`] format. Blank lines and lines starting
    /// with `#` are skipped.
    pub fn from_text(text: &str) -> Result<ValueList, ModelError> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v = f64::from_str(line).map_err(|_| ModelError::Parse { line: i + 1, text: line.to_string() })?;
            values.push(v);
        }
        ValueList::new(values)
    }
}

/// The number of queries exponential search may need when starting at `eps`,
/// bracketing `x` and narrowing the bracket below `delta`:
/// `1 + ⌈log2(x/eps)⌉_{>=1} + ⌊log2(x/delta)⌋_{>=0}`.
///
/// Both logarithms are evaluated exactly by repeated doubling, so the result
/// does not suffer from rounding at powers of two. `delta` may be `+∞`.
#[track_caller]
pub fn n_exp(eps: Cost, x: Cost, delta: Cost) -> u64 {
    assert!(eps > Cost::ZERO && delta > Cost::ZERO, "n_exp needs positive eps and delta");
    assert!(x.is_finite() && eps.is_finite(), "n_exp needs finite eps and x");
    // smallest k >= 0 with eps * 2^k >= x
    let mut up = 0u64;
    let mut p = eps.get();
    while p < x.get() {
        p *= 2.0;
        up += 1;
    }
    // largest k >= 0 with delta * 2^k <= x
    let mut down = 0u64;
    if delta.is_finite() {
        let mut q = delta.get() * 2.0;
        while q <= x.get() {
            q *= 2.0;
            down += 1;
        }
    }
    1 + up.max(1) + down
}

/// What a query reveals about the critical cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FeedbackMode {
    /// Only whether the budget sufficed: `[C, ∞]` or `[1, C]`.
    Limited,
    /// Unit-granular bounds for integer cost lists.
    Integer,
    /// Exact next value above `C`, or a list value in `[C_crit, C]`.
    Extended,
}

impl FeedbackMode {
    pub const ALL: [FeedbackMode; 3] = [FeedbackMode::Limited, FeedbackMode::Integer, FeedbackMode::Extended];
}

/// Answers budgeted queries from a [`ValueList`] with a designated optimal
/// cost.
#[derive(Clone, Debug)]
pub struct SyntheticQuery {
    list: ValueList,
    c_star: Cost,
    n_star: usize,
    mode: FeedbackMode,
}

impl SyntheticQuery {
    pub fn new(list: ValueList, c_star: Cost, mode: FeedbackMode) -> Result<SyntheticQuery, ModelError> {
        if !list.contains(c_star) {
            return Err(ModelError::NotInList(c_star));
        }
        let n_star = list.count_leq(c_star);
        Ok(SyntheticQuery { list, c_star, n_star, mode })
    }

    pub fn list(&self) -> &ValueList {
        &self.list
    }

    pub fn c_star(&self) -> Cost {
        self.c_star
    }

    pub fn n_star(&self) -> usize {
        self.n_star
    }

    pub fn mode(&self) -> FeedbackMode {
        self.mode
    }

    pub fn answer(&self, c: Cost, b: Budget) -> QueryOutcome<()> {
        let n = self.list.count_leq(c) as u64;
        if (self.n_star as u64) <= n && n <= b {
            return QueryOutcome::Solved { solution: Solution::without_path(self.c_star), expanded: n };
        }
        let expanded = n.min(b);
        let sufficient = c < self.list.c_crit(b);
        let interval = match (self.mode, sufficient) {
            (FeedbackMode::Limited, true) => CostInterval::at_least(c),
            (FeedbackMode::Limited, false) => CostInterval::new(Cost::ONE.min(c), c),
            (FeedbackMode::Integer, true) => CostInterval::at_least(Cost::new(c.get().floor() + 1.0)),
            (FeedbackMode::Integer, false) => {
                let top = Cost::new(c.get().floor());
                CostInterval::new(Cost::ONE.min(top), top)
            }
            (FeedbackMode::Extended, true) => CostInterval::at_least(self.list.gap_bounds(c).1),
            (FeedbackMode::Extended, false) => {
                let top = self.list.gap_bounds(c).0;
                CostInterval::new(Cost::ONE.min(top), top)
            }
        };
        QueryOutcome::Pruned { interval, expanded }
    }
}

impl BudgetedQuery for SyntheticQuery {
    type State = ();

    fn query(&mut self, limit: Cost, budget: Budget, _lower_bound: Option<Cost>) -> QueryOutcome<()> {
        self.answer(limit, budget)
    }
}
