//! Exponential search over cost limits with a fixed expansion budget.

use crate::cost::{Cost, CostInterval};
use crate::query::{Budget, BudgetedQuery, QueryOutcome, Solution, Tally};

/// How an exponential search ended.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpSearch<S> {
    /// The bracket collapsed onto the critical cost of the budget.
    Critical(Cost),
    Solved(Solution<S>),
    NoSolution,
    /// The query allowance ran out first; carries the current bracket.
    Unfinished(CostInterval),
}

/// Narrows `bracket` by `feedback`.
///
/// Valid feedback always overlaps the bracket. If it does not, the feedback is
/// trusted over the stale bracket.
pub(crate) fn narrow(bracket: CostInterval, feedback: CostInterval) -> CostInterval {
    match bracket.intersect(&feedback) {
        Some(i) => i,
        None => {
            debug_assert!(false, "disjoint feedback {feedback} for bracket {bracket}");
            feedback
        }
    }
}

/// Locates the critical cost of `budget`, starting from `start`, which must
/// not exceed it.
///
/// With limited feedback the bisection may never close; use
/// [`exp_search_bounded`] there.
#[track_caller]
pub fn exp_search<Q: BudgetedQuery>(query: &mut Q, start: Cost, budget: Budget) -> ExpSearch<Q::State> {
    exp_search_bounded(query, start, budget, u64::MAX)
}

/// [`exp_search`] that gives up after `max_queries` queries.
#[track_caller]
pub fn exp_search_bounded<Q: BudgetedQuery>(
    query: &mut Q,
    start: Cost,
    budget: Budget,
    max_queries: u64,
) -> ExpSearch<Q::State> {
    run(query, start, budget, max_queries, &mut Tally::default())
}

#[track_caller]
pub(crate) fn run<Q: BudgetedQuery>(
    query: &mut Q,
    start: Cost,
    budget: Budget,
    max_queries: u64,
    tally: &mut Tally,
) -> ExpSearch<Q::State> {
    assert!(start >= Cost::ONE && start.is_finite(), "exponential search must start at a finite cost >= 1, got {start}");
    let mut bracket = CostInterval::at_least(start);
    let mut asked = 0;
    loop {
        if asked == max_queries {
            return ExpSearch::Unfinished(bracket);
        }
        let c = if bracket.high.is_infinite() {
            bracket.low * 2.0
        } else {
            (bracket.low + bracket.high) / 2.0
        };
        let outcome = query.query(c, budget, None);
        tally.record(&outcome);
        asked += 1;
        match outcome {
            QueryOutcome::Solved { solution, .. } => return ExpSearch::Solved(solution),
            QueryOutcome::NoSolution { .. } => return ExpSearch::NoSolution,
            QueryOutcome::Pruned { interval, .. } => bracket = narrow(bracket, interval),
        }
        if bracket.is_point() {
            return ExpSearch::Critical(bracket.low);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FeedbackMode, SyntheticQuery, ValueList};
    use crate::query::Instrumented;

    fn c(v: f64) -> Cost {
        Cost::new(v)
    }

    fn trace_list(mode: FeedbackMode) -> Instrumented<SyntheticQuery> {
        let list = ValueList::new([1.4, 1.5, 1.8, 2.9, 3.5, 3.6, 3.9, 4.5, 5.0, 6.0]).unwrap();
        Instrumented::new(SyntheticQuery::new(list, c(6.0), mode).unwrap())
    }

    #[test]
    fn exp_search_trace() {
        let mut q = trace_list(FeedbackMode::Extended);
        assert_eq!(exp_search(&mut q, c(1.3), 7), ExpSearch::Critical(c(4.5)));
        assert_eq!(q.limits(), [c(2.6), c(5.8), c(3.95), c(4.75)]);
    }

    #[test]
    fn start_at_critical_cost() {
        let mut q = trace_list(FeedbackMode::Extended);
        assert_eq!(exp_search(&mut q, c(4.5), 7), ExpSearch::Critical(c(4.5)));
        assert_eq!(q.limits(), [c(9.0), c(5.25), c(4.75)]);
    }

    #[test]
    fn sufficient_budget_solves() {
        let mut q = trace_list(FeedbackMode::Limited);
        assert!(matches!(exp_search(&mut q, c(1.4), 10), ExpSearch::Solved(s) if s.cost == c(6.0)));
    }

    #[test]
    fn bounded_search_stops() {
        let mut q = trace_list(FeedbackMode::Limited);
        assert!(matches!(exp_search_bounded(&mut q, c(1.3), 7, 3), ExpSearch::Unfinished(_)));
        assert_eq!(q.calls.len(), 3);
    }

    #[test]
    #[should_panic]
    fn rejects_start_below_one() {
        exp_search(&mut trace_list(FeedbackMode::Extended), c(0.5), 7);
    }
}
