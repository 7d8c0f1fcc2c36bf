//! Randomized checks of the expansion and query-count bounds against the
//! synthetic query oracle.

use std::fmt;

use clap::ValueEnum;
use ibex::model::{n_exp, FeedbackMode, SyntheticQuery, ValueList};
use ibex::rng::{derive_seed, rng, SplitMix64};
use ibex::ubs::{default_cost, ubs, Segment};
use ibex::{dovibex, exp_search, exp_search_bounded, ibex_simple, Cost, ExpSearch, Instrumented, QueryOutcome};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::{Distribution, Exp, Geometric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    /// Plain IBEX total expansions.
    Thm1,
    /// Exponential search query counts.
    Prop12,
    /// Scheduler step totals.
    Thm2,
    /// DovIBEX expansions, any feedback.
    Thm3,
    /// DovIBEX expansions, extended feedback.
    Thm4,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Thm1, Suite::Prop12, Suite::Thm2, Suite::Thm3, Suite::Thm4];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Prop12 => "prop12",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
        }
    }
}

/// How a random value list is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// Values uniform in `[1, 100)`.
    Uniform,
    /// Running sums of exponential gaps at a random scale.
    GeometricGap,
    /// A handful of distinct values, each repeated.
    HeavyDuplicate,
}

impl Law {
    pub const ALL: [Law; 3] = [Law::Uniform, Law::GeometricGap, Law::HeavyDuplicate];
}

/// Draws a list of 1 to 500 values. With `integer`, values are rounded up.
pub fn random_list(rng: &mut SplitMix64, law: Law, integer: bool) -> ValueList {
    let size = rng.random_range(1..=500usize);
    let values: Vec<f64> = match law {
        Law::Uniform => (0..size).map(|_| rng.random_range(1.0..100.0)).collect(),
        Law::GeometricGap => {
            let scale = 2f64.powi(rng.random_range(-4..=4));
            let gap = Exp::new(1.0 / scale).expect("positive rate");
            let mut v = 1.0 + gap.sample(rng);
            (0..size)
                .map(|_| {
                    v += gap.sample(rng);
                    v
                })
                .collect()
        }
        Law::HeavyDuplicate => {
            let distinct: Vec<f64> = (0..rng.random_range(1..=5)).map(|_| rng.random_range(1.0..20.0)).collect();
            (0..size).map(|_| *distinct.choose(rng).expect("non-empty")).collect()
        }
    };
    let values = values.into_iter().map(|v| if integer { v.ceil() } else { v });
    ValueList::new(values).expect("generated values are >= 1")
}

/// A failed trial, with the list for replay.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub trial: u64,
    pub detail: String,
    /// The value list in [`ValueList::to_text`] form, when one was used.
    pub list: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub trials: u64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {}: {} trials, {} violations", self.suite.name(), self.trials, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  trial {}: {}", v.trial, v.detail)?;
            if let Some(list) = &v.list {
                for line in list.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

/// Runs `trials` trials of `suite`. Trial `i` draws from `derive_seed(seed, i)`.
#[track_caller]
pub fn verify_bounds(suite: Suite, trials: u64, seed: u64) -> Report {
    assert!(trials >= 1, "at least one trial");
    let mut violations = Vec::new();
    for trial in 0..trials {
        let mut rng = rng(derive_seed(seed, trial));
        let law = Law::ALL[(trial % 3) as usize];
        let check = match suite {
            Suite::Thm1 => thm1(&mut rng, law),
            Suite::Prop12 => prop12(&mut rng, law),
            Suite::Thm2 => thm2(&mut rng).map_err(|e| (e, None)),
            Suite::Thm3 => thm3(&mut rng, law),
            Suite::Thm4 => thm4(&mut rng, law),
        };
        if let Err((detail, list)) = check {
            violations.push(Violation { trial, detail, list: list.map(|l: ValueList| l.to_text()) });
        }
    }
    Report { suite, trials, violations }
}

type Check = Result<(), (String, Option<ValueList>)>;

fn fail(list: &ValueList, detail: String) -> Check {
    Err((detail, Some(list.clone())))
}

fn pick_c_star(rng: &mut SplitMix64, list: &ValueList) -> Cost {
    *list.values().choose(rng).expect("lists are non-empty")
}

/// IBEX with extended feedback, and with integer feedback on integer lists,
/// stays within `4 n* n_exp(C_min, C*, δ_min)` expansions; `δ_min` is 1 for
/// integer feedback.
fn thm1(rng: &mut SplitMix64, law: Law) -> Check {
    for (mode, integer) in [(FeedbackMode::Extended, false), (FeedbackMode::Integer, true)] {
        let list = random_list(rng, law, integer);
        let c_star = pick_c_star(rng, &list);
        let c_min = list.min().expect("non-empty");
        let mut q = SyntheticQuery::new(list.clone(), c_star, mode).expect("c_star from list");
        let n_star = q.n_star() as u64;
        let delta = if integer { Cost::ONE } else { list.delta_min(c_star) };
        let bound = 4 * n_star * n_exp(c_min, c_star, delta);
        let report = ibex_simple(&mut q, c_min);
        if report.cost() != Some(c_star) {
            return fail(&list, format!("{mode:?}: cost {:?}, want {c_star}", report.cost()));
        }
        if report.expansions > bound {
            return fail(&list, format!("{mode:?}: C*={c_star}: {} expansions > bound {bound}", report.expansions));
        }
    }
    Ok(())
}

/// With `b >= n*` exponential search ends with the solution within
/// `n_exp(start, C*, C_crit(b) - C*)` queries, in every feedback mode. With
/// `b < n*` and extended feedback (integer feedback on integer lists) it
/// returns `C_crit(b)` within `n_exp(start, C_crit(b), δ)` queries.
fn prop12(rng: &mut SplitMix64, law: Law) -> Check {
    let mode = FeedbackMode::ALL[rng.random_range(0..3)];
    let integer = mode == FeedbackMode::Integer;
    let list = random_list(rng, law, integer);
    let c_star = pick_c_star(rng, &list);
    let n = list.len() as u64;
    let b = rng.random_range(1..=n + 2);
    let c_min = list.min().expect("non-empty");
    // IBEX starts from 1 or a previous critical cost, both common draws here
    let start = match rng.random_range(0..3) {
        0 => Cost::ONE,
        1 => c_min,
        _ => Cost::new(rng.random_range(1.0..=c_min.get())),
    };
    let c_crit = list.c_crit(b);
    let mut q = Instrumented::new(SyntheticQuery::new(list.clone(), c_star, mode).expect("c_star from list"));
    let n_star = q.inner.n_star() as u64;
    if b >= n_star {
        let bound = n_exp(start, c_star, c_crit - c_star);
        let out = exp_search_bounded(&mut q, start, b, bound);
        let calls = q.calls.len() as u64;
        return match out {
            ExpSearch::Solved(s) if s.cost == c_star => Ok(()),
            other => fail(
                &list,
                format!("{mode:?} b={b} start={start} C*={c_star}: {other:?} after {calls} queries, bound {bound}"),
            ),
        };
    }
    match mode {
        FeedbackMode::Limited => {
            // no termination guarantee; the bracket must keep the critical cost
            let out = exp_search_bounded(&mut q, start, b, 64);
            for call in &q.calls {
                if let Some(i) = call.interval {
                    if !i.contains(c_crit) {
                        return fail(&list, format!("limited b={b}: interval {i} misses C_crit {c_crit}"));
                    }
                }
            }
            if matches!(out, ExpSearch::Solved(_) | ExpSearch::NoSolution) {
                return fail(&list, format!("limited b={b} < n*={n_star}: {out:?}"));
            }
            Ok(())
        }
        FeedbackMode::Integer | FeedbackMode::Extended => {
            let delta = if integer { Cost::ONE } else { list.delta_min(c_crit) };
            // a start off the lattice of possible lower ends may cost one more
            // query to move the lower end onto C_crit
            let on_lattice = if integer { start.get().fract() == 0.0 } else { list.contains(start) };
            let bound = n_exp(start, c_crit, delta) + u64::from(!on_lattice);
            let out = exp_search(&mut q, start, b);
            let calls = q.calls.len() as u64;
            if out != ExpSearch::Critical(c_crit) || calls > bound {
                return fail(
                    &list,
                    format!("{mode:?} b={b} start={start}: {out:?} after {calls} queries, want {c_crit} within {bound}"),
                );
            }
            Ok(())
        }
    }
}

/// The scheduler with `T(k, r) = r 2^k`, programs halting after random step
/// counts `τ_j` and one program finishing the run: after every pair `(k, r)`
/// the total steps are at most `Σ_j min(τ_j, T_j(k, r))`, at most
/// `r 2^k ⌊k + log2 r⌋`, and pairs run in non-decreasing `T(k, r)`.
fn thm2(rng: &mut SplitMix64) -> Result<(), String> {
    let programs = rng.random_range(1..=12u32);
    let geometric = Geometric::new(0.05).expect("valid p");
    // None: runs until the schedule ends
    let mut tau: Vec<Option<u128>> = (1..=programs)
        .map(|j| (!rng.random_bool(0.3)).then(|| 1 + u128::from(geometric.sample(rng)) * (1u128 << rng.random_range(0..=j))))
        .collect();
    let winner = rng.random_range(1..=programs);
    let finish = tau[winner as usize - 1].unwrap_or(1u128 << rng.random_range(1..=winner + 6));
    tau[winner as usize - 1] = Some(finish);
    let tau_of = |j: u32| tau.get(j as usize - 1).copied().flatten();

    let mut used: Vec<u128> = Vec::new();
    let mut last_t = 0u128;
    let mut error = None;
    ubs(default_cost, |slot| {
        let k = slot.k as usize;
        if used.len() < k {
            used.resize(k, 0);
        }
        let room = tau_of(slot.k).map_or(u128::MAX, |t| t - used[k - 1]);
        let spent = slot.budget.min(room);
        used[k - 1] += spent;
        let total: u128 = used.iter().sum();
        let bound: u128 = (1u32..)
            .map(|j| (j, default_cost(j, 1)))
            .take_while(|&(_, t1)| t1 <= slot.t)
            .map(|(j, t1)| {
                let t_j = t1 * (slot.t / t1);
                tau_of(j).map_or(t_j, |tau| tau.min(t_j))
            })
            .sum();
        let corollary = slot.t * u128::from(slot.k + slot.r.ilog2());
        if slot.t < last_t {
            error = Some(format!("pair ({}, {}) at T={} after T={last_t}", slot.k, slot.r, slot.t));
        } else if total > bound || total > corollary {
            error = Some(format!(
                "pair ({}, {}): {total} steps > sum bound {bound} or corollary {corollary}",
                slot.k, slot.r
            ));
        }
        last_t = slot.t;
        if error.is_some() || (slot.k == winner && used[k - 1] == finish) {
            Segment::Done(())
        } else if spent < slot.budget {
            Segment::Halted
        } else {
            Segment::Running
        }
    });
    error.map_or(Ok(()), Err)
}

fn floor_log2(z: u64) -> u64 {
    u64::from(z.max(1).ilog2())
}

/// Plain DovIBEX in every feedback mode uses at most `Z ⌊log2 Z⌋`
/// expansions, `Z = 2 n* n_exp(C_min, C*, δ(C*))`.
fn thm3(rng: &mut SplitMix64, law: Law) -> Check {
    let mode = FeedbackMode::ALL[rng.random_range(0..3)];
    let list = random_list(rng, law, mode == FeedbackMode::Integer);
    let c_star = pick_c_star(rng, &list);
    let c_min = list.min().expect("non-empty");
    let mut q = SyntheticQuery::new(list.clone(), c_star, mode).expect("c_star from list");
    let z = 2 * q.n_star() as u64 * n_exp(c_min, c_star, list.delta(c_star));
    let bound = z * floor_log2(z);
    check_dovibex(&list, &mut q, c_min, bound)
}

/// Plain DovIBEX with extended feedback uses at most
/// `2 n* (r1 + r2 (1 + ⌊log2 r2⌋))` expansions.
fn thm4(rng: &mut SplitMix64, law: Law) -> Check {
    let list = random_list(rng, law, false);
    let c_star = pick_c_star(rng, &list);
    let c_min = list.min().expect("non-empty");
    let mut q = SyntheticQuery::new(list.clone(), c_star, FeedbackMode::Extended).expect("c_star from list");
    let r1 = n_exp(c_min, c_star, list.delta_min(c_star));
    let r2 = n_exp(c_min, c_star, list.delta(c_star));
    let bound = 2 * q.n_star() as u64 * (r1 + r2 * (1 + floor_log2(r2)));
    check_dovibex(&list, &mut q, c_min, bound)
}

fn check_dovibex(list: &ValueList, q: &mut SyntheticQuery, c_min: Cost, bound: u64) -> Check {
    let mode = q.mode();
    let c_star = q.c_star();
    let report = dovibex(q, c_min);
    if report.cost() != Some(c_star) {
        return fail(list, format!("{mode:?}: cost {:?}, want {c_star}", report.cost()));
    }
    if report.expansions > bound {
        return fail(list, format!("{mode:?}: C*={c_star}: {} expansions > bound {bound}", report.expansions));
    }
    Ok(())
}

/// Replays one list against every bound that applies to it, for debugging
/// a reported violation.
pub fn replay(list: &ValueList, c_star: Cost, mode: FeedbackMode) -> Vec<QueryOutcome<()>> {
    let mut q = SyntheticQuery::new(list.clone(), c_star, mode).expect("c_star from list");
    let c_min = list.min().expect("non-empty");
    let mut outcomes = Vec::new();
    let mut budget = 2u64;
    loop {
        let out = ibex::BudgetedQuery::query(&mut q, c_min * 2.0, budget, None);
        let done = matches!(out, QueryOutcome::Solved { .. });
        outcomes.push(out);
        if done || budget > list.len() as u64 * 2 {
            return outcomes;
        }
        budget *= 2;
    }
}
