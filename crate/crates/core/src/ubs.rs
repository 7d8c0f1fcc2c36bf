//! A uniform budgeted scheduler that dovetails an unbounded family of
//! resumable programs.
//!
//! Program `k` runs in segments `r = 1, 2, ...`; segment `r` is granted
//! `T(k, r) - T(k, r - 1)` steps and pairs execute in non-decreasing order of
//! `T(k, r)`, ties going to the smaller `k`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// The default cost function `T(k, r) = r * 2^k`, saturating.
pub fn default_cost(k: u32, r: u64) -> u128 {
    let pow = if k >= 127 { u128::MAX } else { 1u128 << k };
    pow.saturating_mul(r as u128)
}

/// The pair being executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub k: u32,
    pub r: u64,
    /// `T(k, r)`
    pub t: u128,
    /// `T(k, r) - T(k, r - 1)`
    pub budget: u128,
}

/// What a program reports at the end of a segment.
#[derive(Clone, Debug, PartialEq)]
pub enum Segment<R> {
    Running,
    Halted,
    /// Stops the whole schedule with a result.
    Done(R),
}

/// Runs the schedule until some program returns [`Segment::Done`].
///
/// Returns `None` only if the queue empties, which cannot happen since a new
/// program is spawned at every first segment; callers rely on `Done`.
pub fn ubs<R>(cost: impl Fn(u32, u64) -> u128, mut run: impl FnMut(Slot) -> Segment<R>) -> Option<R> {
    let mut queue = BinaryHeap::new();
    queue.push(Reverse((cost(1, 1), 1u32, 1u64)));
    while let Some(Reverse((t, k, r))) = queue.pop() {
        let budget = t - cost(k, r - 1);
        match run(Slot { k, r, t, budget }) {
            Segment::Done(result) => return Some(result),
            Segment::Running => queue.push(Reverse((cost(k, r + 1), k, r + 1))),
            Segment::Halted => {}
        }
        if r == 1 {
            queue.push(Reverse((cost(k + 1, 1), k + 1, 1)));
        }
    }
    None
}
