//! The budgeted query abstraction shared by every IBEX-style driver.
//!
//! A query takes an f-cost limit `C` and an expansion budget `b`. It either
//! certifies an optimal solution, proves that no solution exists at all, or
//! returns an interval that brackets the smallest limit at which `b`
//! expansions stop being enough.

use crate::cost::{Cost, CostInterval};

/// An expansion budget. [`UNLIMITED`] stands for an infinite budget.
pub type Budget = u64;

pub const UNLIMITED: Budget = u64::MAX;

/// `factor * b`, saturating at [`UNLIMITED`].
pub fn scale_budget(b: Budget, factor: f64) -> Budget {
    if b == UNLIMITED {
        return UNLIMITED;
    }
    let scaled = b as f64 * factor;
    if scaled >= UNLIMITED as f64 {
        UNLIMITED
    } else {
        scaled as Budget
    }
}

/// `base^k` as a budget, saturating at [`UNLIMITED`].
pub fn power_budget(base: f64, k: u32) -> Budget {
    let v = base.powi(k as i32);
    if !v.is_finite() || v >= UNLIMITED as f64 {
        UNLIMITED
    } else {
        v.round() as Budget
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<S> {
    pub cost: Cost,
    /// States from the initial state to the goal, inclusive. Empty for
    /// synthetic queries that have no underlying state space.
    pub path: Vec<S>,
}

impl<S> Solution<S> {
    pub fn without_path(cost: Cost) -> Solution<S> {
        Solution { cost, path: Vec::new() }
    }

    pub fn map_path<T>(self, f: impl FnMut(S) -> T) -> Solution<T> {
        Solution { cost: self.cost, path: self.path.into_iter().map(f).collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QueryOutcome<S> {
    /// The interval contains the critical cost of the budget.
    Pruned { interval: CostInterval, expanded: u64 },
    /// A certified optimal solution.
    Solved { solution: Solution<S>, expanded: u64 },
    /// The whole (finite) space was searched without meeting a goal.
    NoSolution { expanded: u64 },
}

impl<S> QueryOutcome<S> {
    pub fn expanded(&self) -> u64 {
        match self {
            QueryOutcome::Pruned { expanded, .. }
            | QueryOutcome::Solved { expanded, .. }
            | QueryOutcome::NoSolution { expanded } => *expanded,
        }
    }

    pub fn interval(&self) -> Option<CostInterval> {
        match self {
            QueryOutcome::Pruned { interval, .. } => Some(*interval),
            _ => None,
        }
    }
}

/// A budgeted f-cost-limited search.
///
/// Implementations must expand at most `min(budget, n(limit))` nodes. When
/// `lower_bound` is given it is a proven lower bound on the optimal cost, and
/// the query may return as soon as it meets a solution of that cost.
pub trait BudgetedQuery {
    type State;

    fn query(
        &mut self,
        limit: Cost,
        budget: Budget,
        lower_bound: Option<Cost>,
    ) -> QueryOutcome<Self::State>;
}

impl<Q: BudgetedQuery + ?Sized> BudgetedQuery for &mut Q {
    type State = Q::State;

    fn query(&mut self, limit: Cost, budget: Budget, lower_bound: Option<Cost>) -> QueryOutcome<Q::State> {
        (**self).query(limit, budget, lower_bound)
    }
}

/// One call observed by [`Instrumented`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QueryRecord {
    pub limit: Cost,
    pub budget: Budget,
    pub expanded: u64,
    pub interval: Option<CostInterval>,
    pub solved: bool,
}

/// Wraps a query and records every call made through it.
#[derive(Debug)]
pub struct Instrumented<Q> {
    pub inner: Q,
    pub calls: Vec<QueryRecord>,
    pub expanded: u64,
}

impl<Q> Instrumented<Q> {
    pub fn new(inner: Q) -> Self {
        Instrumented { inner, calls: Vec::new(), expanded: 0 }
    }

    pub fn limits(&self) -> Vec<Cost> {
        self.calls.iter().map(|c| c.limit).collect()
    }
}

impl<Q: BudgetedQuery> BudgetedQuery for Instrumented<Q> {
    type State = Q::State;

    fn query(&mut self, limit: Cost, budget: Budget, lower_bound: Option<Cost>) -> QueryOutcome<Q::State> {
        let outcome = self.inner.query(limit, budget, lower_bound);
        self.expanded += outcome.expanded();
        self.calls.push(QueryRecord {
            limit,
            budget,
            expanded: outcome.expanded(),
            interval: outcome.interval(),
            solved: matches!(outcome, QueryOutcome::Solved { .. }),
        });
        outcome
    }
}

/// What a complete search run reports back.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport<S> {
    pub solution: Option<Solution<S>>,
    pub expansions: u64,
    /// Expansions of nodes or states already expanded earlier in the run.
    /// Only the best-first graph searches track this; others leave it 0.
    pub reexpansions: u64,
    /// Queries for budgeted drivers, iterations for iterative deepening.
    pub iterations: u64,
}

impl<S> SearchReport<S> {
    pub fn cost(&self) -> Option<Cost> {
        self.solution.as_ref().map(|s| s.cost)
    }

    pub fn map_path<T>(self, f: impl FnMut(S) -> T) -> SearchReport<T> {
        SearchReport {
            solution: self.solution.map(|s| s.map_path(f)),
            expansions: self.expansions,
            reexpansions: self.reexpansions,
            iterations: self.iterations,
        }
    }
}

/// Running totals kept by the drivers.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Tally {
    pub expansions: u64,
    pub queries: u64,
}

impl Tally {
    pub(crate) fn record<S>(&mut self, outcome: &QueryOutcome<S>) {
        self.expansions += outcome.expanded();
        self.queries += 1;
    }

    pub(crate) fn finish<S>(self, solution: Option<Solution<S>>) -> SearchReport<S> {
        SearchReport { solution, expansions: self.expansions, reexpansions: 0, iterations: self.queries }
    }
}
