//! DovIBEX: exponential searches with budgets `2^k` (or `alpha^k`) dovetailed
//! by the uniform budgeted scheduler. Unlike IBEX it copes with limited
//! feedback.

use crate::cost::Cost;
use crate::query::{power_budget, Budget, BudgetedQuery, QueryOutcome, SearchReport, Solution, Tally, UNLIMITED};
use crate::ubs::{default_cost, ubs, Segment};

/// Per-program bracket `[low, high]`.
#[derive(Clone, Copy, Debug)]
struct Bracket {
    low: Cost,
    high: Cost,
}

fn finish<S>(tally: Tally, result: Option<Option<Solution<S>>>) -> SearchReport<S> {
    tally.finish(result.flatten())
}

/// Program `k` runs exponential search with budget `2^k`, one query per
/// segment, and halts once its bracket closes.
pub fn dovibex<Q: BudgetedQuery>(query: &mut Q, c_min: Cost) -> SearchReport<Q::State> {
    let mut tally = Tally::default();
    let mut programs: Vec<Bracket> = Vec::new();
    let result = ubs(default_cost, |slot| {
        let k = slot.k as usize;
        if programs.len() < k {
            programs.resize(k, Bracket { low: c_min, high: Cost::INFINITY });
        }
        let p = &mut programs[k - 1];
        let c = if p.high.is_infinite() { p.low * 2.0 } else { (p.low + p.high) / 2.0 };
        let budget = Budget::try_from(slot.budget).unwrap_or(UNLIMITED);
        let outcome = query.query(c, budget, None);
        tally.record(&outcome);
        match outcome {
            QueryOutcome::Solved { solution, .. } => Segment::Done(Some(solution)),
            QueryOutcome::NoSolution { .. } => Segment::Done(None),
            QueryOutcome::Pruned { interval, .. } => {
                p.low = p.low.max(interval.low);
                p.high = p.high.min(interval.high);
                if p.low >= p.high {
                    Segment::Halted
                } else {
                    Segment::Running
                }
            }
        }
    });
    finish(tally, result)
}

/// Parameters of [`dovibex_enhanced`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DovParams {
    /// Program `k` queries with budget `alpha^k`. At least 2.
    pub alpha: f64,
    /// Grow the limit by `C_low + 2^(r-1)` instead of doubling it.
    pub additive: bool,
    /// Start every program with an unlimited-budget query at the global lower
    /// bound.
    pub probe: bool,
    /// Share a program's upper bound with all programs of smaller budget.
    pub propagate_upper: bool,
}

impl Default for DovParams {
    fn default() -> Self {
        DovParams { alpha: 8.0, additive: false, probe: true, propagate_upper: false }
    }
}

/// DovIBEX with a global lower bound on the optimal cost, a global lower
/// bound on the budget needed, and pruning of programs that can no longer
/// succeed.
#[track_caller]
pub fn dovibex_enhanced<Q: BudgetedQuery>(query: &mut Q, c_min: Cost, params: DovParams) -> SearchReport<Q::State> {
    assert!(params.alpha >= 2.0, "alpha must be at least 2, got {}", params.alpha);
    let mut tally = Tally::default();
    let mut c_low = c_min;
    let mut b_low: Budget = 0;
    let mut highs: Vec<Cost> = Vec::new();
    let result = ubs(default_cost, |slot| {
        let k = slot.k as usize;
        if highs.len() < k {
            highs.resize(k, Cost::INFINITY);
        }
        let mut budget = power_budget(params.alpha, slot.k);
        if budget <= b_low || highs[k - 1] <= c_low {
            return Segment::Halted;
        }
        let c = if slot.r == 1 && params.probe {
            budget = UNLIMITED;
            c_low
        } else if highs[k - 1].is_infinite() {
            if params.additive {
                let step = 2f64.powi(i32::try_from(slot.r - 1).unwrap_or(i32::MAX));
                c_low + Cost::new(step)
            } else {
                c_low * 2.0
            }
        } else {
            (c_low + highs[k - 1]) / 2.0
        };
        let outcome = query.query(c, budget, Some(c_low));
        tally.record(&outcome);
        let (interval, used) = match outcome {
            QueryOutcome::Solved { solution, .. } => return Segment::Done(Some(solution)),
            QueryOutcome::NoSolution { .. } => return Segment::Done(None),
            QueryOutcome::Pruned { interval, expanded } => (interval, expanded),
        };
        c_low = c_low.max(interval.low);
        highs[k - 1] = highs[k - 1].min(interval.high);
        if interval.high.is_infinite() {
            b_low = b_low.max(used);
        } else if params.propagate_upper {
            let high = highs[k - 1];
            for h in &mut highs[..k - 1] {
                *h = (*h).min(high);
            }
        }
        Segment::Running
    });
    finish(tally, result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FeedbackMode, SyntheticQuery, ValueList};

    fn c(v: f64) -> Cost {
        Cost::new(v)
    }

    fn example_list(mode: FeedbackMode) -> SyntheticQuery {
        let list = ValueList::new([1.0, 3.0, 5.0, 5.0, 8.0, 12.0, 13.0, 13.0, 15.0]).unwrap();
        SyntheticQuery::new(list, c(15.0), mode).unwrap()
    }

    #[test]
    fn solves_example_list_in_every_mode() {
        for mode in FeedbackMode::ALL {
            assert_eq!(dovibex(&mut example_list(mode), c(1.0)).cost(), Some(c(15.0)), "{mode:?}");
        }
    }

    #[test]
    fn enhanced_solves_example_list_with_every_flag() {
        for bits in 0..16u32 {
            let params = DovParams {
                alpha: if bits & 1 == 0 { 2.0 } else { 8.0 },
                additive: bits & 2 != 0,
                probe: bits & 4 != 0,
                propagate_upper: bits & 8 != 0,
            };
            for mode in [FeedbackMode::Integer, FeedbackMode::Extended] {
                let report = dovibex_enhanced(&mut example_list(mode), c(1.0), params);
                assert_eq!(report.cost(), Some(c(15.0)), "{params:?} {mode:?}");
            }
        }
    }

    #[test]
    fn limited_feedback_with_irrational_gaps_terminates() {
        let values: Vec<f64> = (0..64).map(|i| 1.0 + f64::from(i) * std::f64::consts::SQRT_2).collect();
        let c_star = *values.last().unwrap();
        let list = ValueList::new(values).unwrap();
        let mut q = SyntheticQuery::new(list, c(c_star), FeedbackMode::Limited).unwrap();
        assert_eq!(dovibex(&mut q, c(1.0)).cost(), Some(c(c_star)));
    }
}
