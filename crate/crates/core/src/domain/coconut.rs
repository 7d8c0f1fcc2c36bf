use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::cost::Cost;
use crate::rng;

use super::SearchDomain;

/// Actions per node.
pub const ARITY: u8 = 3;

/// An infinite ternary tree with a single goal.
///
/// The goal path repeats one trunk action for `D` steps, then follows a
/// random suffix of `q` actions. The first action costs 1. Below depth `D`,
/// repeating the parent's action costs 1 and switching costs `2D`; from
/// depth `D` on every action costs 1/10. The heuristic is 0 except at the
/// root, where it is 1, so the optimal cost is `D + q/10`.
///
/// Successors are listed in action order 0, 1, 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coconut {
    depth: u32,
    trunk: u8,
    suffix: Vec<u8>,
}

/// A node of the tree. Two nodes are equal only if they are reached by the
/// same action sequence (up to hash collisions in `path`, which only matter
/// for duplicate detection, never for goal tests).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoconutState {
    pub depth: u32,
    /// Action taken from the parent; `ARITY` at the root.
    pub last: u8,
    /// Whether every action so far followed the goal path.
    pub on_goal_path: bool,
    path: u64,
}

impl Coconut {
    /// `D` uniform in `[1, 10000]`, `q` geometric with success probability
    /// 1/4 (counting failures), trunk and suffix actions uniform.
    pub fn from_seed(seed: u64) -> Coconut {
        let mut r = rng::rng(seed);
        let depth = r.random_range(1..=10_000u32);
        let trunk = r.random_range(0..ARITY);
        let q = Geometric::new(0.25).expect("valid probability").sample(&mut r);
        let suffix = (0..q).map(|_| r.random_range(0..ARITY)).collect();
        Coconut { depth, trunk, suffix }
    }

    #[track_caller]
    pub fn new(depth: u32, trunk: u8, suffix: Vec<u8>) -> Coconut {
        assert!(depth >= 1 && trunk < ARITY && suffix.iter().all(|&a| a < ARITY));
        Coconut { depth, trunk, suffix }
    }

    /// `D`
    pub fn trunk_depth(&self) -> u32 {
        self.depth
    }

    pub fn trunk_action(&self) -> u8 {
        self.trunk
    }

    /// `q`
    pub fn suffix_len(&self) -> u32 {
        self.suffix.len() as u32
    }

    pub fn optimal_cost(&self) -> Cost {
        Cost::new(f64::from(self.depth) + f64::from(self.suffix_len()) / 10.0)
    }

    fn goal_action(&self, depth: u32) -> Option<u8> {
        if depth < self.depth {
            Some(self.trunk)
        } else {
            self.suffix.get((depth - self.depth) as usize).copied()
        }
    }

    fn edge_cost(&self, from: &CoconutState, action: u8) -> Cost {
        if from.depth == 0 {
            Cost::ONE
        } else if from.depth < self.depth {
            if action == from.last {
                Cost::ONE
            } else {
                Cost::from(2 * self.depth)
            }
        } else {
            Cost::new(0.1)
        }
    }
}

impl SearchDomain for Coconut {
    type State = CoconutState;

    fn initial_state(&self) -> CoconutState {
        CoconutState { depth: 0, last: ARITY, on_goal_path: true, path: 0 }
    }

    fn successors(&self, s: &CoconutState, mut emit: impl FnMut(CoconutState, Cost)) {
        let next = s.on_goal_path.then(|| self.goal_action(s.depth)).flatten();
        for a in 0..ARITY {
            let child = CoconutState {
                depth: s.depth + 1,
                last: a,
                on_goal_path: next == Some(a),
                path: s.path.wrapping_mul(0x100_0000_01b3).wrapping_add(u64::from(a) + 1),
            };
            emit(child, self.edge_cost(s, a));
        }
    }

    fn heuristic(&self, s: &CoconutState) -> Cost {
        if s.depth == 0 {
            Cost::ONE
        } else {
            Cost::ZERO
        }
    }

    fn is_goal(&self, s: &CoconutState) -> bool {
        s.on_goal_path && s.depth == self.depth + self.suffix_len()
    }
}
