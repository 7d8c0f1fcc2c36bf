//! The budgeted, f-cost limited depth-first query for tree search.
//!
//! Memory is linear in the depth of the search: the engine keeps only the
//! current path, each entry holding its state and its pending successors.

use crate::cost::{Cost, CostInterval};
use crate::domain::{SearchDomain, Shifted};
use crate::driver::Driver;
use crate::query::{Budget, BudgetedQuery, QueryOutcome, SearchReport, Solution};

/// Duplicate detection along the current path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CycleCheck {
    #[default]
    None,
    /// Skip a successor equal to the parent's parent.
    Parent,
    /// Skip a successor equal to any state on the current path.
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeOptions {
    pub cycle_check: CycleCheck,
    /// Keep solutions found by queries that ran out of budget and use their
    /// cost as an upper bound in later queries.
    pub incumbent: bool,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions { cycle_check: CycleCheck::None, incumbent: true }
    }
}

/// Counts pruned f-costs in geometric buckets over `(low, high]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FringeHistogram {
    low: Cost,
    high: Cost,
    counts: Vec<u64>,
}

impl FringeHistogram {
    #[track_caller]
    pub fn new(low: Cost, high: Cost, buckets: usize) -> FringeHistogram {
        assert!(low > Cost::ZERO && low < high && high.is_finite() && buckets > 0);
        FringeHistogram { low, high, counts: vec![0; buckets] }
    }

    /// Upper edge of bucket `i`.
    pub fn edge(&self, i: usize) -> Cost {
        if i + 1 == self.counts.len() {
            return self.high;
        }
        let ratio = self.high.get() / self.low.get();
        Cost::new(self.low.get() * ratio.powf((i + 1) as f64 / self.counts.len() as f64))
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    fn record(&mut self, f: Cost) {
        if f <= self.low || f > self.high {
            return;
        }
        let ratio = self.high.get() / self.low.get();
        let pos = (f.get() / self.low.get()).ln() / ratio.ln() * self.counts.len() as f64;
        let mut i = (pos.ceil() as usize).saturating_sub(1).min(self.counts.len() - 1);
        // correct for rounding at the edges
        while i > 0 && f <= self.edge(i - 1) {
            i -= 1;
        }
        while f > self.edge(i) {
            i += 1;
        }
        self.counts[i] += 1;
    }
}

struct Frame<S> {
    state: S,
    g: Cost,
    children: Vec<(S, Cost)>,
    next: usize,
}

enum Visit {
    Skip,
    Expand,
    Solved,
    Exceeded,
}

/// The tree query over a domain. State carried between queries: the
/// incumbent solution and instrumentation.
pub struct TreeQuery<D: SearchDomain> {
    domain: D,
    options: TreeOptions,
    incumbent: Option<Solution<D::State>>,
    histogram: Option<FringeHistogram>,
    max_depth: usize,
    spare: Vec<Vec<(D::State, Cost)>>,
}

struct Data<S> {
    limit: Cost,
    budget: Budget,
    lower_bound: Option<Cost>,
    min_fringe: Cost,
    max_visited: Cost,
    expanded: u64,
    best: Option<Solution<S>>,
    best_cost: Cost,
}

impl<D: SearchDomain> TreeQuery<D> {
    pub fn new(domain: D, options: TreeOptions) -> TreeQuery<D> {
        TreeQuery { domain, options, incumbent: None, histogram: None, max_depth: 0, spare: Vec::new() }
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn incumbent(&self) -> Option<&Solution<D::State>> {
        self.incumbent.as_ref()
    }

    /// Seeds the incumbent, e.g. with an upper bound from another run.
    pub fn set_incumbent(&mut self, solution: Option<Solution<D::State>>) {
        self.incumbent = solution;
    }

    /// Deepest path held so far, in states.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Records the f-cost of every pruned node in later queries.
    pub fn set_histogram(&mut self, histogram: Option<FringeHistogram>) {
        self.histogram = histogram;
    }

    pub fn take_histogram(&mut self) -> Option<FringeHistogram> {
        self.histogram.take()
    }

    fn visit(&mut self, path: &[Frame<D::State>], state: &D::State, g: Cost, data: &mut Data<D::State>) -> Visit {
        let f = g + self.domain.heuristic(state);
        if f > data.limit {
            data.min_fringe = data.min_fringe.min(f);
            if let Some(h) = &mut self.histogram {
                h.record(f);
            }
            return Visit::Skip;
        }
        data.max_visited = data.max_visited.max(f);
        if f >= data.best_cost {
            return Visit::Skip;
        }
        if self.domain.is_goal(state) {
            let mut states: Vec<D::State> = path.iter().map(|fr| fr.state.clone()).collect();
            states.push(state.clone());
            data.best = Some(Solution { cost: g, path: states });
            data.best_cost = f;
            if data.lower_bound.is_some_and(|lb| g <= lb) {
                return Visit::Solved;
            }
            return Visit::Skip;
        }
        if data.expanded == data.budget {
            return Visit::Exceeded;
        }
        data.expanded += 1;
        Visit::Expand
    }

    fn push(&mut self, path: &mut Vec<Frame<D::State>>, state: D::State, g: Cost) {
        let mut children = self.spare.pop().unwrap_or_default();
        let check = self.options.cycle_check;
        let grandparent = path.last().map(|fr| &fr.state);
        self.domain.successors(&state, |t, c| {
            let skip = match check {
                CycleCheck::None => false,
                CycleCheck::Parent => grandparent == Some(&t),
                CycleCheck::Path => t == state || path.iter().any(|fr| fr.state == t),
            };
            if !skip {
                children.push((t, c));
            }
        });
        path.push(Frame { state, g, children, next: 0 });
        self.max_depth = self.max_depth.max(path.len());
    }

    fn pop(&mut self, path: &mut Vec<Frame<D::State>>) {
        if let Some(mut fr) = path.pop() {
            fr.children.clear();
            self.spare.push(fr.children);
        }
    }

    fn run(&mut self, limit: Cost, budget: Budget, lower_bound: Option<Cost>) -> QueryOutcome<D::State> {
        let incumbent_cost = match (&self.incumbent, self.options.incumbent) {
            (Some(s), true) => s.cost,
            _ => Cost::INFINITY,
        };
        if lower_bound.is_some_and(|lb| incumbent_cost <= lb) {
            let solution = self.incumbent.clone().expect("finite incumbent cost");
            return QueryOutcome::Solved { solution, expanded: 0 };
        }
        let mut data = Data {
            limit,
            budget,
            lower_bound,
            min_fringe: Cost::INFINITY,
            max_visited: Cost::ZERO,
            expanded: 0,
            best: None,
            best_cost: incumbent_cost,
        };
        let mut path: Vec<Frame<D::State>> = Vec::new();
        let root = self.domain.initial_state();
        let mut status = self.visit(&path, &root, Cost::ZERO, &mut data);
        if let Visit::Expand = status {
            self.push(&mut path, root, Cost::ZERO);
        }
        while let Some(top) = path.last_mut() {
            if matches!(status, Visit::Solved | Visit::Exceeded) {
                break;
            }
            if top.next == top.children.len() {
                self.pop(&mut path);
                continue;
            }
            let (child, cost) = top.children[top.next].clone();
            top.next += 1;
            let g = top.g + cost;
            status = self.visit(&path, &child, g, &mut data);
            if let Visit::Expand = status {
                self.push(&mut path, child, g);
            }
        }
        while !path.is_empty() {
            self.pop(&mut path);
        }
        match status {
            Visit::Solved => {
                let solution = data.best.expect("solved query has a solution");
                QueryOutcome::Solved { solution, expanded: data.expanded }
            }
            Visit::Exceeded => {
                if self.options.incumbent {
                    if let Some(best) = data.best {
                        self.incumbent = Some(best);
                    }
                }
                let high = data.max_visited;
                QueryOutcome::Pruned { interval: CostInterval::new(Cost::ONE.min(high), high), expanded: data.expanded }
            }
            Visit::Skip | Visit::Expand => {
                if let Some(solution) = data.best {
                    QueryOutcome::Solved { solution, expanded: data.expanded }
                } else if incumbent_cost <= limit {
                    let solution = self.incumbent.clone().expect("finite incumbent cost");
                    QueryOutcome::Solved { solution, expanded: data.expanded }
                } else if data.min_fringe.is_infinite() {
                    QueryOutcome::NoSolution { expanded: data.expanded }
                } else {
                    QueryOutcome::Pruned { interval: CostInterval::at_least(data.min_fringe), expanded: data.expanded }
                }
            }
        }
    }
}

impl<D: SearchDomain> BudgetedQuery for TreeQuery<D> {
    type State = D::State;

    fn query(&mut self, limit: Cost, budget: Budget, lower_bound: Option<Cost>) -> QueryOutcome<D::State> {
        self.run(limit, budget, lower_bound)
    }
}

/// Budgeted tree search: `driver` over the tree query on the unit-floor
/// shifted domain. Solution costs and paths are reported in the original
/// domain.
///
/// Does not terminate on infinite trees without a solution.
pub fn bts<D: SearchDomain>(domain: D, driver: Driver, options: TreeOptions) -> SearchReport<D::State> {
    let shifted = Shifted::new(domain);
    let c_min = shifted.c_min();
    let mut query = TreeQuery::new(shifted, options);
    let report = driver.run(&mut query, c_min);
    query.domain().unshift_report(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Chain, ShiftState};
    use crate::query::UNLIMITED;

    fn c(v: f64) -> Cost {
        Cost::new(v)
    }

    fn chain3() -> TreeQuery<Shifted<Chain>> {
        TreeQuery::new(Shifted::new(Chain::new(3)), TreeOptions::default())
    }

    #[test]
    fn chain_solves_under_large_limit() {
        let out = chain3().query(c(10.0), UNLIMITED, None);
        match out {
            QueryOutcome::Solved { solution, expanded } => {
                assert_eq!(solution.cost, c(4.0));
                assert_eq!(expanded, 4);
                assert_eq!(solution.path.last(), Some(&ShiftState::Inner(3)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chain_pruned_below_optimum() {
        assert_eq!(
            chain3().query(c(2.0), UNLIMITED, None),
            QueryOutcome::Pruned { interval: CostInterval::at_least(c(3.0)), expanded: 3 }
        );
    }

    #[test]
    fn budget_exhaustion_reports_max_visited() {
        assert_eq!(
            chain3().query(c(10.0), 2, None),
            QueryOutcome::Pruned { interval: CostInterval::new(c(1.0), c(2.0)), expanded: 2 }
        );
    }

    #[test]
    fn histogram_buckets_cover_range() {
        let mut h = FringeHistogram::new(c(1.0), c(10.0), 50);
        for v in [1.0, 1.01, 5.0, 10.0, 10.5] {
            h.record(c(v));
        }
        assert_eq!(h.counts().iter().sum::<u64>(), 3);
        assert_eq!(h.edge(49), c(10.0));
        assert_eq!(h.counts()[49], 1);
    }
}
