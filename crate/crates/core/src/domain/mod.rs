//! State spaces searched by the tree and graph queries.

use std::fmt::Debug;
use std::hash::Hash;

use crate::cost::Cost;

pub mod chain;
pub mod coconut;
pub mod explicit;
pub mod mero;
pub mod metered;
pub mod oracle;
pub mod puzzle;
pub mod shift;
pub mod topspin;

pub use chain::Chain;
pub use coconut::Coconut;
pub use explicit::ExplicitGraph;
pub use mero::Mero;
pub use metered::{Metered, Stop};
pub use puzzle::{CostModel, Puzzle, PuzzleError};
pub use shift::{ShiftState, Shifted};
pub use topspin::{PatternDatabase, TopSpin};

/// A state space with an admissible heuristic.
///
/// Successors must be produced in a fixed, documented order: expansion counts
/// of depth-first searches depend on it.
pub trait SearchDomain {
    type State: Clone + Eq + Hash + Debug;

    fn initial_state(&self) -> Self::State;

    /// Calls `emit` once per successor of `state`, with the edge cost.
    fn successors(&self, state: &Self::State, emit: impl FnMut(Self::State, Cost));

    fn heuristic(&self, state: &Self::State) -> Cost;

    fn is_goal(&self, state: &Self::State) -> bool;
}

/// Collects the successors of `state` into a vector.
pub fn successor_list<D: SearchDomain>(domain: &D, state: &D::State) -> Vec<(D::State, Cost)> {
    let mut out = Vec::new();
    domain.successors(state, |s, c| out.push((s, c)));
    out
}

impl<D: SearchDomain + ?Sized> SearchDomain for &D {
    type State = D::State;

    fn initial_state(&self) -> D::State {
        (**self).initial_state()
    }

    fn successors(&self, state: &D::State, emit: impl FnMut(D::State, Cost)) {
        (**self).successors(state, emit)
    }

    fn heuristic(&self, state: &D::State) -> Cost {
        (**self).heuristic(state)
    }

    fn is_goal(&self, state: &D::State) -> bool {
        (**self).is_goal(state)
    }
}
