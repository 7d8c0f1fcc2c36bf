use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::cost::Cost;
use crate::domain::SearchDomain;

/// Why a [`Metered`] domain stopped producing successors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    Expansions,
    Time,
}

const CLOCK_EVERY: u64 = 4096;

/// Caps the number of successor calls, and optionally wall time, by making
/// every state a dead end once a limit is hit. Any search over the wrapped
/// domain then drains and returns; check [`Metered::stopped`] before trusting
/// its result.
pub struct Metered<D> {
    inner: D,
    cap: u64,
    deadline: Option<Instant>,
    calls: Cell<u64>,
    stopped: Cell<Option<Stop>>,
}

impl<D> Metered<D> {
    pub fn new(inner: D, cap: u64, time_limit: Option<Duration>) -> Metered<D> {
        Metered {
            inner,
            cap,
            deadline: time_limit.map(|t| Instant::now() + t),
            calls: Cell::new(0),
            stopped: Cell::new(None),
        }
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }

    /// Successor calls served so far.
    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn stopped(&self) -> Option<Stop> {
        self.stopped.get()
    }
}

impl<D: SearchDomain> SearchDomain for Metered<D> {
    type State = D::State;

    fn initial_state(&self) -> D::State {
        self.inner.initial_state()
    }

    fn successors(&self, state: &D::State, emit: impl FnMut(D::State, Cost)) {
        if self.stopped.get().is_some() {
            return;
        }
        let n = self.calls.get() + 1;
        if n > self.cap {
            self.stopped.set(Some(Stop::Expansions));
            return;
        }
        if n.is_multiple_of(CLOCK_EVERY) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stopped.set(Some(Stop::Time));
            return;
        }
        self.calls.set(n);
        self.inner.successors(state, emit)
    }

    fn heuristic(&self, state: &D::State) -> Cost {
        self.inner.heuristic(state)
    }

    fn is_goal(&self, state: &D::State) -> bool {
        self.inner.is_goal(state)
    }
}
