use crate::cost::Cost;

use super::SearchDomain;

/// States `0..=depth` in a line with unit edges, goal at `depth`, `h = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    depth: u32,
}

impl Chain {
    #[track_caller]
    pub fn new(depth: u32) -> Chain {
        assert!(depth >= 1, "chain depth must be at least 1");
        Chain { depth }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

impl SearchDomain for Chain {
    type State = u32;

    fn initial_state(&self) -> u32 {
        0
    }

    fn successors(&self, &s: &u32, mut emit: impl FnMut(u32, Cost)) {
        if s < self.depth {
            emit(s + 1, Cost::ONE);
        }
    }

    fn heuristic(&self, _: &u32) -> Cost {
        Cost::ZERO
    }

    fn is_goal(&self, &s: &u32) -> bool {
        s == self.depth
    }
}
