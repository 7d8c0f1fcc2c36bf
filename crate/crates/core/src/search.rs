//! Iterative budgeted exponential search: the IBEX drivers.
//!
//! Both drivers are generic over a [`BudgetedQuery`]. Plugged into the tree
//! query they give BTS; plugged into the graph query they give BGS.

use crate::cost::Cost;
use crate::expsearch::{self, narrow, ExpSearch};
use crate::query::{scale_budget, Budget, BudgetedQuery, QueryOutcome, SearchReport, Tally, UNLIMITED};

/// Parameters of [`ibex_enhanced`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IbexParams {
    /// Upper end of the budget window `[2b, alpha * b]`. At least 2.
    pub alpha: f64,
    /// Grow the limit by `C_low + 2^j` instead of doubling it.
    pub additive: bool,
}

impl Default for IbexParams {
    fn default() -> Self {
        IbexParams { alpha: 8.0, additive: false }
    }
}

/// Doubles the budget each iteration and moves the lower bound up to the
/// critical cost of that budget. Needs integer or extended feedback.
///
/// `c_min` is the smallest cost in the space (the root's f-cost), at least 1.
pub fn ibex_simple<Q: BudgetedQuery>(query: &mut Q, c_min: Cost) -> SearchReport<Q::State> {
    let mut tally = Tally::default();
    let mut low = c_min;
    let mut budget: Budget = 1;
    loop {
        budget = budget.saturating_mul(2);
        match expsearch::run(query, low, budget, u64::MAX, &mut tally) {
            ExpSearch::Critical(c) => low = c,
            ExpSearch::Solved(solution) => return tally.finish(Some(solution)),
            ExpSearch::NoSolution => return tally.finish(None),
            ExpSearch::Unfinished(_) => unreachable!("unbounded search cannot run out of queries"),
        }
    }
}

/// IBEX with an unlimited-budget probe at the current lower bound, an early
/// exit once a query lands in the budget window, and optionally additive
/// growth of the limit.
///
/// When every probe expands at least twice the current budget this performs
/// exactly the iterations of IDA*.
#[track_caller]
pub fn ibex_enhanced<Q: BudgetedQuery>(query: &mut Q, c_min: Cost, params: IbexParams) -> SearchReport<Q::State> {
    assert!(params.alpha >= 2.0, "alpha must be at least 2, got {}", params.alpha);
    let mut tally = Tally::default();
    let mut low = c_min;
    let mut budget: Budget = 1;
    loop {
        let probe = query.query(low, UNLIMITED, Some(low));
        tally.record(&probe);
        let (mut bracket, mut used) = match probe {
            QueryOutcome::Pruned { interval, expanded } => (interval, expanded),
            QueryOutcome::Solved { solution, .. } => return tally.finish(Some(solution)),
            QueryOutcome::NoSolution { .. } => return tally.finish(None),
        };
        let target = budget.saturating_mul(2);
        if used < target {
            let limit_budget = scale_budget(budget, params.alpha);
            let mut step = 1.0;
            loop {
                step *= 2.0;
                let c = if bracket.high.is_infinite() {
                    if params.additive {
                        bracket.low + Cost::new(step)
                    } else {
                        bracket.low * 2.0
                    }
                } else {
                    (bracket.low + bracket.high) / 2.0
                };
                let outcome = query.query(c, limit_budget, Some(bracket.low));
                tally.record(&outcome);
                let (interval, expanded) = match outcome {
                    QueryOutcome::Pruned { interval, expanded } => (interval, expanded),
                    QueryOutcome::Solved { solution, .. } => return tally.finish(Some(solution)),
                    QueryOutcome::NoSolution { .. } => return tally.finish(None),
                };
                used = expanded;
                bracket = narrow(bracket, interval);
                if (interval.high.is_infinite() && used >= target) || bracket.is_point() {
                    break;
                }
            }
        }
        low = bracket.low;
        budget = target.max(used);
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

    fn example_list(mode: FeedbackMode) -> SyntheticQuery {
        let list = ValueList::new([1.0, 3.0, 5.0, 5.0, 8.0, 12.0, 13.0, 13.0, 15.0]).unwrap();
        SyntheticQuery::new(list, c(15.0), mode).unwrap()
    }

    #[test]
    fn simple_solves_example_list_within_bound() {
        let report = ibex_simple(&mut example_list(FeedbackMode::Extended), c(1.0));
        assert_eq!(report.cost(), Some(c(15.0)));
        assert!(report.expansions <= 288, "{}", report.expansions);
    }

    #[test]
    fn single_value_list_solves_on_first_query() {
        let list = ValueList::new([1.0]).unwrap();
        let mut q = Instrumented::new(SyntheticQuery::new(list, c(1.0), FeedbackMode::Extended).unwrap());
        let report = ibex_simple(&mut q, c(1.0));
        assert_eq!(report.cost(), Some(c(1.0)));
        assert_eq!(q.calls.len(), 1);
        assert_eq!((q.calls[0].limit, q.calls[0].budget), (c(2.0), 2));
    }

    #[test]
    fn simple_accepts_integer_feedback() {
        let report = ibex_simple(&mut example_list(FeedbackMode::Integer), c(1.0));
        assert_eq!(report.cost(), Some(c(15.0)));
    }

    #[test]
    fn enhanced_solves_example_list() {
        for additive in [false, true] {
            for alpha in [2.0, 8.0] {
                let report = ibex_enhanced(&mut example_list(FeedbackMode::Extended), c(1.0), IbexParams { alpha, additive });
                assert_eq!(report.cost(), Some(c(15.0)));
            }
        }
    }

    #[test]
    fn additive_growth_steps_by_powers_of_two() {
        let list = ValueList::new((1..=40).map(f64::from)).unwrap();
        let mut q = Instrumented::new(SyntheticQuery::new(list, c(40.0), FeedbackMode::Extended).unwrap());
        ibex_enhanced(&mut q, c(1.0), IbexParams { alpha: 8.0, additive: true });
        // probe at 1 expands 1 < 2, then 2 + 2 = 4 expands 4 >= 2 and ends the iteration
        assert_eq!(&q.limits()[..2], &[c(1.0), c(4.0)]);
    }

    #[test]
    #[should_panic]
    fn enhanced_rejects_small_alpha() {
        ibex_enhanced(&mut example_list(FeedbackMode::Extended), c(1.0), IbexParams { alpha: 1.5, additive: false });
    }
}
