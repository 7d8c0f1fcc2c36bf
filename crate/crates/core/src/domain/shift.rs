use crate::cost::Cost;
use crate::query::{SearchReport, Solution};

use super::SearchDomain;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShiftState<S> {
    /// The artificial root, with heuristic 1.
    Root,
    Inner(S),
}

/// Guarantees every f-cost is at least 1 by prepending an artificial root
/// with heuristic 1 and an edge of cost `1 - h(s_init)`.
///
/// When the initial heuristic is already at least 1 the wrapper is the
/// identity: the initial state is `Inner(s_init)` and no root exists.
#[derive(Clone, Debug)]
pub struct Shifted<D> {
    inner: D,
    edge: Option<Cost>,
}

impl<D: SearchDomain> Shifted<D> {
    pub fn new(inner: D) -> Shifted<D> {
        let h = inner.heuristic(&inner.initial_state());
        let edge = (h < Cost::ONE).then(|| Cost::ONE - h);
        Shifted { inner, edge }
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }

    /// Amount added to every solution cost.
    pub fn offset(&self) -> Cost {
        self.edge.unwrap_or(Cost::ZERO)
    }

    /// The smallest f-cost in the shifted space.
    pub fn c_min(&self) -> Cost {
        self.f_root()
    }

    fn f_root(&self) -> Cost {
        self.heuristic(&self.initial_state())
    }

    /// Maps a solution back to the original space.
    pub fn unshift(&self, solution: Solution<ShiftState<D::State>>) -> Solution<D::State> {
        Solution {
            cost: solution.cost.saturating_sub(self.offset()),
            path: solution
                .path
                .into_iter()
                .filter_map(|s| match s {
                    ShiftState::Root => None,
                    ShiftState::Inner(s) => Some(s),
                })
                .collect(),
        }
    }

    pub fn unshift_report(&self, report: SearchReport<ShiftState<D::State>>) -> SearchReport<D::State> {
        SearchReport {
            solution: report.solution.map(|s| self.unshift(s)),
            expansions: report.expansions,
            reexpansions: report.reexpansions,
            iterations: report.iterations,
        }
    }
}

impl<D: SearchDomain> SearchDomain for Shifted<D> {
    type State = ShiftState<D::State>;

    fn initial_state(&self) -> Self::State {
        match self.edge {
            Some(_) => ShiftState::Root,
            None => ShiftState::Inner(self.inner.initial_state()),
        }
    }

    fn successors(&self, state: &Self::State, mut emit: impl FnMut(Self::State, Cost)) {
        match state {
            ShiftState::Root => emit(ShiftState::Inner(self.inner.initial_state()), self.offset()),
            ShiftState::Inner(s) => self.inner.successors(s, |s, c| emit(ShiftState::Inner(s), c)),
        }
    }

    fn heuristic(&self, state: &Self::State) -> Cost {
        match state {
            ShiftState::Root => Cost::ONE,
            ShiftState::Inner(s) => self.inner.heuristic(s),
        }
    }

    fn is_goal(&self, state: &Self::State) -> bool {
        match state {
            ShiftState::Root => false,
            ShiftState::Inner(s) => self.inner.is_goal(s),
        }
    }
}
