//! Brute-force counting and solving, used as test oracles and for reporting
//! `n*`-style statistics.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use thiserror::Error;

use crate::cost::Cost;

use super::SearchDomain;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Count paths (nodes of the search tree).
    Tree,
    /// Count states.
    Graph,
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("gave up after {0} nodes")]
pub struct Overflow(pub u64);

/// Nodes whose every prefix has f-cost strictly below `c`.
pub fn count_below<D: SearchDomain>(domain: &D, c: Cost, mode: Mode, cap: u64) -> Result<u64, Overflow> {
    count(domain, |f| f < c, mode, cap)
}

/// Nodes whose every prefix has f-cost at most `c`.
pub fn count_at_most<D: SearchDomain>(domain: &D, c: Cost, mode: Mode, cap: u64) -> Result<u64, Overflow> {
    count(domain, |f| f <= c, mode, cap)
}

/// Goals are counted but not expanded, as in the queries.
fn count<D: SearchDomain>(domain: &D, keep: impl Fn(Cost) -> bool, mode: Mode, cap: u64) -> Result<u64, Overflow> {
    let root = domain.initial_state();
    if !keep(domain.heuristic(&root)) {
        return Ok(0);
    }
    let mut total = 0u64;
    match mode {
        Mode::Tree => {
            let mut stack = vec![(root, Cost::ZERO)];
            while let Some((s, g)) = stack.pop() {
                total += 1;
                if total > cap {
                    return Err(Overflow(cap));
                }
                if domain.is_goal(&s) {
                    continue;
                }
                domain.successors(&s, |t, c| {
                    let gt = g + c;
                    if keep(gt + domain.heuristic(&t)) {
                        stack.push((t, gt));
                    }
                });
            }
        }
        Mode::Graph => {
            // Reaching a state at its smallest g dominates every other
            // admissible prefix, so a g-ordered search with the filter on
            // generation finds exactly the states in question.
            let mut best: HashMap<D::State, Cost> = HashMap::new();
            let mut done: HashSet<D::State> = HashSet::new();
            let mut queue = BinaryHeap::new();
            let mut seq = 0u64;
            let mut states = vec![root.clone()];
            best.insert(root, Cost::ZERO);
            queue.push(Reverse((Cost::ZERO, seq, 0usize)));
            while let Some(Reverse((g, _, idx))) = queue.pop() {
                let s = states[idx].clone();
                if !done.insert(s.clone()) {
                    continue;
                }
                total += 1;
                if total > cap {
                    return Err(Overflow(cap));
                }
                if domain.is_goal(&s) {
                    continue;
                }
                domain.successors(&s, |t, c| {
                    let gt = g + c;
                    if done.contains(&t) || !keep(gt + domain.heuristic(&t)) {
                        return;
                    }
                    if best.get(&t).is_some_and(|&b| b <= gt) {
                        return;
                    }
                    best.insert(t.clone(), gt);
                    seq += 1;
                    states.push(t);
                    queue.push(Reverse((gt, seq, states.len() - 1)));
                });
            }
        }
    }
    Ok(total)
}

/// Optimal solution cost by Dijkstra with full duplicate detection,
/// ignoring the heuristic. `None` if no goal is reachable.
pub fn optimal_cost<D: SearchDomain>(domain: &D, cap: u64) -> Result<Option<Cost>, Overflow> {
    let mut best: HashMap<D::State, Cost> = HashMap::new();
    let mut queue = BinaryHeap::new();
    let mut states = vec![domain.initial_state()];
    best.insert(states[0].clone(), Cost::ZERO);
    queue.push(Reverse((Cost::ZERO, 0usize)));
    let mut expanded = 0u64;
    while let Some(Reverse((g, idx))) = queue.pop() {
        let s = states[idx].clone();
        if best.get(&s).is_some_and(|&b| b < g) {
            continue;
        }
        if domain.is_goal(&s) {
            return Ok(Some(g));
        }
        expanded += 1;
        if expanded > cap {
            return Err(Overflow(cap));
        }
        domain.successors(&s, |t, c| {
            let gt = g + c;
            if best.get(&t).is_none_or(|&b| gt < b) {
                best.insert(t.clone(), gt);
                states.push(t);
                queue.push(Reverse((gt, states.len() - 1)));
            }
        });
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Chain, Mero, Shifted};

    #[test]
    fn mero_states_below_optimum() {
        let m = Mero::new(100);
        assert_eq!(count_below(&m, m.optimal_cost(), Mode::Graph, u64::MAX), Ok(200));
        assert_eq!(optimal_cost(&m, u64::MAX), Ok(Some(Cost::new(200.0))));
    }

    #[test]
    fn shifted_chain_prefixes() {
        let d = Shifted::new(Chain::new(7));
        assert_eq!(count_below(&d, Cost::new(8.0), Mode::Tree, u64::MAX), Ok(8));
        assert_eq!(count_at_most(&d, Cost::new(8.0), Mode::Tree, u64::MAX), Ok(9));
        assert_eq!(count_below(&d, Cost::ZERO, Mode::Graph, u64::MAX), Ok(0));
    }

    #[test]
    fn cap_reports_overflow() {
        let d = Shifted::new(Chain::new(50));
        assert_eq!(count_below(&d, Cost::new(100.0), Mode::Tree, 10), Err(Overflow(10)));
    }
}
