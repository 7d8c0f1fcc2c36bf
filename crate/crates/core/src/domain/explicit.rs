use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::Rng;

use crate::cost::Cost;

use super::SearchDomain;

/// A small graph given by adjacency lists. States are indices; successors
/// are listed in insertion order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitGraph {
    init: usize,
    edges: Vec<Vec<(usize, Cost)>>,
    h: Vec<Cost>,
    goals: Vec<bool>,
}

impl ExplicitGraph {
    /// A graph with `n` states, no edges, `h = 0` and no goals.
    pub fn new(n: usize, init: usize) -> ExplicitGraph {
        assert!(init < n);
        ExplicitGraph { init, edges: vec![Vec::new(); n], h: vec![Cost::ZERO; n], goals: vec![false; n] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cost: Cost) {
        self.edges[from].push((to, cost));
    }

    pub fn set_goal(&mut self, s: usize) {
        self.goals[s] = true;
    }

    pub fn set_heuristic(&mut self, s: usize, h: Cost) {
        self.h[s] = h;
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self, s: usize) -> &[(usize, Cost)] {
        &self.edges[s]
    }

    /// `h*`: cost to the nearest goal, by Dijkstra on reversed edges.
    pub fn perfect_heuristic(&self) -> Vec<Cost> {
        let mut reverse = vec![Vec::new(); self.len()];
        for (from, out) in self.edges.iter().enumerate() {
            for &(to, c) in out {
                reverse[to].push((from, c));
            }
        }
        let mut dist = vec![Cost::INFINITY; self.len()];
        let mut queue = BinaryHeap::new();
        for s in (0..self.len()).filter(|&s| self.goals[s]) {
            dist[s] = Cost::ZERO;
            queue.push(Reverse((Cost::ZERO, s)));
        }
        while let Some(Reverse((d, s))) = queue.pop() {
            if d > dist[s] {
                continue;
            }
            for &(p, c) in &reverse[s] {
                if d + c < dist[p] {
                    dist[p] = d + c;
                    queue.push(Reverse((d + c, p)));
                }
            }
        }
        dist
    }

    /// Replaces the heuristic by a random integer in `[0, h*(s)]` per state,
    /// or in `[0, 20]` where no goal is reachable. Usually inconsistent.
    pub fn randomize_heuristic(&mut self, rng: &mut impl Rng) {
        let perfect = self.perfect_heuristic();
        for (s, hs) in perfect.into_iter().enumerate() {
            let top = if hs.is_finite() { hs.get() as u32 } else { 20 };
            self.h[s] = Cost::from(rng.random_range(0..=top));
        }
    }

    /// A random tree of 1 to `max_states` states with edge costs in
    /// `1..=8`, one or two goals and a random admissible heuristic.
    pub fn random_tree(rng: &mut impl Rng, max_states: usize) -> ExplicitGraph {
        let n = rng.random_range(1..=max_states);
        let mut g = ExplicitGraph::new(n, 0);
        for child in 1..n {
            let parent = rng.random_range(0..child);
            g.add_edge(parent, child, Cost::from(rng.random_range(1..=8u32)));
        }
        for _ in 0..rng.random_range(1..=2) {
            g.set_goal(rng.random_range(0..n));
        }
        g.randomize_heuristic(rng);
        g
    }

    /// A random directed graph (cycles allowed) of 2 to `max_states` states
    /// with edge costs in `1..=8` and a goal reachable from state 0.
    pub fn random_graph(rng: &mut impl Rng, max_states: usize) -> ExplicitGraph {
        loop {
            let n = rng.random_range(2..=max_states);
            let mut g = ExplicitGraph::new(n, 0);
            for from in 0..n {
                for to in 0..n {
                    if from != to && rng.random_bool(0.3) {
                        g.add_edge(from, to, Cost::from(rng.random_range(1..=8u32)));
                    }
                }
            }
            for _ in 0..rng.random_range(1..=2) {
                g.set_goal(rng.random_range(1..n));
            }
            if g.reachable().iter().zip(&g.goals).any(|(&r, &goal)| r && goal) {
                g.randomize_heuristic(rng);
                return g;
            }
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([self.init]);
        seen[self.init] = true;
        while let Some(s) = queue.pop_front() {
            for &(t, _) in &self.edges[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }
}

impl SearchDomain for ExplicitGraph {
    type State = usize;

    fn initial_state(&self) -> usize {
        self.init
    }

    fn successors(&self, &s: &usize, mut emit: impl FnMut(usize, Cost)) {
        for &(t, c) in &self.edges[s] {
            emit(t, c);
        }
    }

    fn heuristic(&self, &s: &usize) -> Cost {
        self.h[s]
    }

    fn is_goal(&self, &s: &usize) -> bool {
        self.goals[s]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn random_heuristics_are_admissible() {
        let mut r = rng::rng(1);
        for _ in 0..50 {
            let g = ExplicitGraph::random_graph(&mut r, 12);
            let perfect = g.perfect_heuristic();
            assert!(perfect[0].is_finite());
            for (s, &hs) in perfect.iter().enumerate() {
                assert!(g.heuristic(&s) <= hs || hs.is_infinite());
            }
        }
    }

    #[test]
    fn random_trees_have_one_parent_per_state() {
        let mut r = rng::rng(2);
        for _ in 0..50 {
            let g = ExplicitGraph::random_tree(&mut r, 12);
            let mut indegree = vec![0; g.len()];
            for s in 0..g.len() {
                for &(t, _) in g.edges(s) {
                    indegree[t] += 1;
                }
            }
            assert_eq!(indegree[0], 0);
            assert!(indegree[1..].iter().all(|&d| d == 1));
        }
    }
}
