//! The budgeted, f-cost limited query for graph search: a uniform-cost
//! search that drops generated nodes above the limit.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::baselines::astar::{best_first, BestFirst, Switch};
use crate::cost::{Cost, CostInterval};
use crate::domain::{SearchDomain, Shifted};
use crate::driver::Driver;
use crate::query::{Budget, BudgetedQuery, QueryOutcome, SearchReport, Solution};

struct Node<S> {
    state: S,
    parent: usize,
}

const NO_PARENT: usize = usize::MAX;

/// The graph query. Each state is expanded at most once per query; across
/// queries the query counts how many expansions hit a state expanded before.
pub struct GraphQuery<D: SearchDomain> {
    domain: D,
    ever_expanded: HashSet<D::State>,
    reexpansions: u64,
    log: Option<Vec<D::State>>,
}

impl<D: SearchDomain> GraphQuery<D> {
    pub fn new(domain: D) -> GraphQuery<D> {
        GraphQuery { domain, ever_expanded: HashSet::new(), reexpansions: 0, log: None }
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    /// Expansions of states already expanded by an earlier query.
    pub fn reexpansions(&self) -> u64 {
        self.reexpansions
    }

    /// Starts or stops logging expanded states.
    pub fn record_expansions(&mut self, on: bool) {
        self.log = on.then(Vec::new);
    }

    /// States expanded since logging started, in order.
    pub fn take_log(&mut self) -> Vec<D::State> {
        self.log.as_mut().map(std::mem::take).unwrap_or_default()
    }

    fn run(&mut self, limit: Cost, budget: Budget) -> QueryOutcome<D::State> {
        let mut nodes = vec![Node { state: self.domain.initial_state(), parent: NO_PARENT }];
        let mut queue = BinaryHeap::new();
        queue.push(Reverse((Cost::ZERO, !self.domain.is_goal(&nodes[0].state), 0usize)));
        let mut visited: HashSet<D::State> = HashSet::new();
        let mut min_fringe = Cost::INFINITY;
        let mut max_visited = Cost::ZERO;
        let mut expanded = 0u64;
        while let Some(Reverse((g, _, idx))) = queue.pop() {
            let state = nodes[idx].state.clone();
            if visited.contains(&state) {
                continue;
            }
            visited.insert(state.clone());
            max_visited = max_visited.max(g + self.domain.heuristic(&state));
            if self.domain.is_goal(&state) {
                let solution = Solution { cost: g, path: trace(&nodes, idx) };
                return QueryOutcome::Solved { solution, expanded };
            }
            if expanded >= budget {
                let interval = CostInterval::new(Cost::ONE.min(max_visited), max_visited);
                return QueryOutcome::Pruned { interval, expanded };
            }
            expanded += 1;
            if !self.ever_expanded.insert(state.clone()) {
                self.reexpansions += 1;
            }
            if let Some(log) = &mut self.log {
                log.push(state.clone());
            }
            let domain = &self.domain;
            domain.successors(&state, |t, c| {
                let gt = g + c;
                let f = gt + domain.heuristic(&t);
                if f > limit {
                    min_fringe = min_fringe.min(f);
                } else if !visited.contains(&t) {
                    // ties on g: goals first, then insertion order
                    queue.push(Reverse((gt, !domain.is_goal(&t), nodes.len())));
                    nodes.push(Node { state: t, parent: idx });
                }
            });
        }
        if min_fringe.is_infinite() {
            QueryOutcome::NoSolution { expanded }
        } else {
            QueryOutcome::Pruned { interval: CostInterval::at_least(min_fringe), expanded }
        }
    }
}

fn trace<S: Clone>(nodes: &[Node<S>], mut idx: usize) -> Vec<S> {
    let mut path = Vec::new();
    while idx != NO_PARENT {
        path.push(nodes[idx].state.clone());
        idx = nodes[idx].parent;
    }
    path.reverse();
    path
}

impl<D: SearchDomain> BudgetedQuery for GraphQuery<D> {
    type State = D::State;

    fn query(&mut self, limit: Cost, budget: Budget, _lower_bound: Option<Cost>) -> QueryOutcome<D::State> {
        self.run(limit, budget)
    }
}

/// Budgeted graph search: `driver` over the graph query on the unit-floor
/// shifted domain. Costs and paths are reported in the original domain.
pub fn bgs<D: SearchDomain>(domain: D, driver: Driver) -> SearchReport<D::State> {
    let shifted = Shifted::new(domain);
    let c_min = shifted.c_min();
    let mut query = GraphQuery::new(shifted);
    let mut report = driver.run(&mut query, c_min);
    report.reexpansions = query.reexpansions();
    query.domain().unshift_report(report)
}

/// Minimum A* expansions before the switch to BGS is considered.
pub const SWITCH_MIN_EXPANSIONS: u64 = 1000;

/// Runs A* until it has made at least [`SWITCH_MIN_EXPANSIONS`] expansions
/// and re-expansions make up at least half of them, then restarts from
/// scratch with BGS. Counts include the abandoned A* prefix.
pub fn astar_with_bgs_fallback<D: SearchDomain>(domain: D, driver: Driver) -> (SearchReport<D::State>, bool) {
    let switch = Switch::new(|expansions, reexpansions| {
        expansions >= SWITCH_MIN_EXPANSIONS && 2 * reexpansions >= expansions
    });
    match best_first(&domain, BestFirst::AStar, Some(switch)) {
        Ok(report) => (report, false),
        Err(prefix) => {
            let mut report = bgs(domain, driver);
            report.expansions += prefix.expansions;
            report.reexpansions += prefix.reexpansions;
            (report, true)
        }
    }
}
