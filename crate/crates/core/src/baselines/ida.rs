use crate::cost::Cost;
use crate::domain::SearchDomain;
use crate::query::{BudgetedQuery, QueryOutcome, SearchReport, Tally, UNLIMITED};
use crate::tree::{FringeHistogram, TreeOptions, TreeQuery};

/// Runs `search` over a tree query on `domain`, passing the root's f-cost.
fn deepen<D: SearchDomain>(
    domain: D,
    options: TreeOptions,
    search: impl FnOnce(&mut TreeQuery<D>, Cost) -> SearchReport<D::State>,
) -> SearchReport<D::State> {
    let root_f = domain.heuristic(&domain.initial_state());
    let mut query = TreeQuery::new(domain, TreeOptions { incumbent: false, ..options });
    search(&mut query, root_f)
}

/// IDA*: each iteration's threshold is the smallest f-cost pruned by the
/// previous one, starting from the root's f-cost.
///
/// Does not terminate on infinite trees without a solution.
pub fn ida_star<D: SearchDomain>(domain: D, options: TreeOptions) -> SearchReport<D::State> {
    deepen(domain, options, |query, root_f| {
        let mut tally = Tally::default();
        let mut threshold = root_f;
        loop {
            let out = query.query(threshold, UNLIMITED, Some(threshold));
            tally.record(&out);
            match out {
                QueryOutcome::Solved { solution, .. } => return tally.finish(Some(solution)),
                QueryOutcome::NoSolution { .. } => return tally.finish(None),
                QueryOutcome::Pruned { interval, .. } => threshold = interval.low,
            }
        }
    })
}

/// EDA*: thresholds `gamma^k` for `k = 1, 2, ...`, skipping those below the
/// root's f-cost. The last iteration finishes by branch and bound below the
/// first solution found.
#[track_caller]
pub fn eda_star<D: SearchDomain>(domain: D, gamma: f64, options: TreeOptions) -> SearchReport<D::State> {
    assert!(gamma > 1.0, "gamma must exceed 1, got {gamma}");
    deepen(domain, options, |query, root_f| {
        let mut tally = Tally::default();
        let mut lower = root_f;
        let mut k = 1;
        loop {
            let threshold = Cost::new(gamma.powi(k));
            k += 1;
            if threshold < root_f {
                continue;
            }
            let out = query.query(threshold, UNLIMITED, Some(lower));
            tally.record(&out);
            match out {
                QueryOutcome::Solved { solution, .. } => return tally.finish(Some(solution)),
                QueryOutcome::NoSolution { .. } => return tally.finish(None),
                QueryOutcome::Pruned { interval, .. } => lower = interval.low,
            }
        }
    })
}

/// Parameters of [`ida_star_cr`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrParams {
    pub buckets: usize,
    /// Target growth of expansions per iteration.
    pub growth: f64,
}

impl Default for CrParams {
    fn default() -> Self {
        CrParams { buckets: 50, growth: 2.0 }
    }
}

/// IDA*_CR: the pruned f-costs of an iteration with threshold `T` are
/// counted in geometric buckets over `(T, 10T]`. The next threshold is the
/// upper edge of the first bucket at which the cumulative count reaches
/// `growth` times the iteration's expansions; failing that, the edge of the
/// last non-empty bucket, or the smallest pruned f-cost if all pruned costs
/// lie beyond `10T`.
pub fn ida_star_cr<D: SearchDomain>(domain: D, params: CrParams, options: TreeOptions) -> SearchReport<D::State> {
    deepen(domain, options, |query, root_f| {
        let mut tally = Tally::default();
        let mut threshold = root_f;
        let mut lower = root_f;
        loop {
            let base = if threshold > Cost::ZERO { threshold } else { Cost::ONE };
            query.set_histogram(Some(FringeHistogram::new(base, base * 10.0, params.buckets)));
            let out = query.query(threshold, UNLIMITED, Some(lower));
            tally.record(&out);
            let hist = query.take_histogram().expect("histogram installed above");
            let (min_fringe, expanded) = match out {
                QueryOutcome::Solved { solution, .. } => return tally.finish(Some(solution)),
                QueryOutcome::NoSolution { .. } => return tally.finish(None),
                QueryOutcome::Pruned { interval, expanded } => (interval.low, expanded),
            };
            lower = min_fringe;
            let target = params.growth * expanded as f64;
            let mut cumulative = 0u64;
            let mut last_nonempty = None;
            let mut chosen = None;
            for (i, &n) in hist.counts().iter().enumerate() {
                if n == 0 {
                    continue;
                }
                cumulative += n;
                last_nonempty = Some(i);
                if cumulative as f64 >= target {
                    chosen = Some(i);
                    break;
                }
            }
            threshold = match chosen.or(last_nonempty) {
                Some(i) => hist.edge(i).max(min_fringe),
                None => min_fringe,
            };
        }
    })
}
