//! A*, Martelli's algorithm B and Mérő's B′, with re-opening.
//!
//! All three break f-ties in favour of the larger g, then the newest node.
//! Selecting the goal counts as an expansion.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::cost::Cost;
use crate::domain::{successor_list, SearchDomain};
use crate::query::{SearchReport, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BestFirst {
    AStar,
    /// Among open nodes with f below the largest f selected so far, picks the
    /// one with smallest g.
    B,
    /// B with heuristic propagation: after expanding `n`, every child `m`
    /// gets `h(m) = max(h(m), h(n) - c(n, m))`. With `parent_update`, `n`
    /// first gets `h(n) = max(h(n), min(h(m) + c(n, m)))`.
    BPrime { parent_update: bool },
}

/// Aborts a best-first search. Called after every expansion with the
/// expansion and re-expansion counts so far.
pub struct Switch<'a>(Box<dyn FnMut(u64, u64) -> bool + 'a>);

impl<'a> Switch<'a> {
    pub fn new(f: impl FnMut(u64, u64) -> bool + 'a) -> Switch<'a> {
        Switch(Box::new(f))
    }
}

struct Node<S> {
    state: S,
    g: Cost,
    h: Cost,
    parent: usize,
    closed: bool,
    expanded: bool,
    seq: u64,
}

const NO_PARENT: usize = usize::MAX;

type FKey = Reverse<(Cost, Reverse<Cost>, Reverse<u64>, usize)>;
type GKey = Reverse<(Cost, Reverse<u64>, usize)>;

struct Open {
    by_f: BinaryHeap<FKey>,
    by_g: BinaryHeap<GKey>,
    /// Largest f selected so far; only maintained for B and B′.
    f_max: Option<Cost>,
    next_seq: u64,
}

impl Open {
    fn push<S>(&mut self, id: usize, node: &mut Node<S>) {
        self.next_seq += 1;
        node.seq = self.next_seq;
        node.closed = false;
        let f = node.g + node.h;
        match self.f_max {
            Some(f_max) if f < f_max => self.by_g.push(Reverse((node.g, Reverse(node.seq), id))),
            _ => self.by_f.push(Reverse((f, Reverse(node.g), Reverse(node.seq), id))),
        }
    }

    fn pop<S>(&mut self, nodes: &[Node<S>]) -> Option<usize> {
        let live = |id: usize, seq: u64| !nodes[id].closed && nodes[id].seq == seq;
        while let Some(Reverse((_, Reverse(seq), id))) = self.by_g.pop() {
            if live(id, seq) {
                return Some(id);
            }
        }
        while let Some(Reverse((f, _, Reverse(seq), id))) = self.by_f.pop() {
            if !live(id, seq) {
                continue;
            }
            if let Some(f_max) = &mut self.f_max {
                *f_max = (*f_max).max(f);
                while let Some(&Reverse((f, Reverse(g), Reverse(seq), other))) = self.by_f.peek() {
                    if f >= *f_max {
                        break;
                    }
                    self.by_f.pop();
                    if live(other, seq) {
                        self.by_g.push(Reverse((g, Reverse(seq), other)));
                    }
                }
            }
            return Some(id);
        }
        None
    }
}

/// Runs `algorithm` to completion, or until `switch` fires, in which case the
/// counts so far are returned as the error.
pub fn best_first<D: SearchDomain>(
    domain: &D,
    algorithm: BestFirst,
    mut switch: Option<Switch<'_>>,
) -> Result<SearchReport<D::State>, SearchReport<D::State>> {
    let init = domain.initial_state();
    let mut index: HashMap<D::State, usize> = HashMap::new();
    let mut nodes = vec![Node {
        h: domain.heuristic(&init),
        state: init.clone(),
        g: Cost::ZERO,
        parent: NO_PARENT,
        closed: false,
        expanded: false,
        seq: 0,
    }];
    index.insert(init, 0);
    let mut open = Open {
        by_f: BinaryHeap::new(),
        by_g: BinaryHeap::new(),
        f_max: (algorithm != BestFirst::AStar).then_some(Cost::ZERO),
        next_seq: 0,
    };
    open.push(0, &mut nodes[0]);
    let mut report = SearchReport { solution: None, expansions: 0, reexpansions: 0, iterations: 1 };

    while let Some(id) = open.pop(&nodes) {
        let node = &mut nodes[id];
        node.closed = true;
        report.expansions += 1;
        if node.expanded {
            report.reexpansions += 1;
        }
        node.expanded = true;
        if let Some(Switch(f)) = &mut switch {
            if f(report.expansions, report.reexpansions) {
                return Err(report);
            }
        }
        if domain.is_goal(&node.state) {
            report.solution = Some(Solution { cost: node.g, path: trace(&nodes, id) });
            return Ok(report);
        }
        let (state, g) = (node.state.clone(), node.g);
        let children: Vec<(usize, Cost)> = successor_list(domain, &state)
            .into_iter()
            .map(|(t, c)| {
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    nodes.push(Node {
                        h: domain.heuristic(&t),
                        state: t,
                        g: Cost::INFINITY,
                        parent: NO_PARENT,
                        closed: false,
                        expanded: false,
                        seq: 0,
                    });
                    nodes.len() - 1
                });
                (id, c)
            })
            .collect();
        if let BestFirst::BPrime { parent_update } = algorithm {
            if parent_update {
                if let Some(m) = children.iter().map(|&(t, c)| nodes[t].h + c).min() {
                    nodes[id].h = nodes[id].h.max(m);
                }
            }
        }
        let h = nodes[id].h;
        for (t, c) in children {
            let mut rekey = false;
            if matches!(algorithm, BestFirst::BPrime { .. }) {
                let lifted = h.saturating_sub(c);
                if lifted > nodes[t].h {
                    nodes[t].h = lifted;
                    rekey = nodes[t].seq != 0 && !nodes[t].closed;
                }
            }
            let child = &mut nodes[t];
            if g + c < child.g {
                child.g = g + c;
                child.parent = id;
                open.push(t, child);
            } else if rekey {
                open.push(t, child);
            }
        }
    }
    Ok(report)
}

fn trace<S: Clone>(nodes: &[Node<S>], mut id: usize) -> Vec<S> {
    let mut path = Vec::new();
    while id != NO_PARENT {
        path.push(nodes[id].state.clone());
        id = nodes[id].parent;
    }
    path.reverse();
    path
}

fn complete<S>(result: Result<SearchReport<S>, SearchReport<S>>) -> SearchReport<S> {
    result.unwrap_or_else(|_| unreachable!("no switch installed"))
}

pub fn astar<D: SearchDomain>(domain: &D) -> SearchReport<D::State> {
    complete(best_first(domain, BestFirst::AStar, None))
}

pub fn algorithm_b<D: SearchDomain>(domain: &D) -> SearchReport<D::State> {
    complete(best_first(domain, BestFirst::B, None))
}

pub fn algorithm_b_prime<D: SearchDomain>(domain: &D, parent_update: bool) -> SearchReport<D::State> {
    complete(best_first(domain, BestFirst::BPrime { parent_update }, None))
}
