//! Runs every configured algorithm on every generated instance.

use std::fmt::Write as _;
use std::io;
use std::time::{Duration, Instant};

use ibex::baselines::{algorithm_b, algorithm_b_prime, astar, eda_star, ida_star, ida_star_cr, CrParams};
use ibex::domain::puzzle::{korf_instances, parse_instances};
use ibex::domain::{Chain, Coconut, CostModel, Mero, Metered, Puzzle, Stop, TopSpin};
use ibex::graph::astar_with_bgs_fallback;
use ibex::rng::{derive_seed, rng};
use ibex::{bgs, bts, Cost, DovParams, Driver, IbexParams, SearchDomain, TreeOptions};
use rand::Rng;
use rayon::prelude::*;

use crate::config::{Algorithm, Config, ConfigError, DomainKind};

/// One benchmark row.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub domain: DomainKind,
    pub instance: u64,
    pub algorithm: Algorithm,
    /// `None` for algorithms without the parameter.
    pub alpha: Option<f64>,
    pub additive: Option<bool>,
    pub solved: bool,
    pub expansions: u64,
    pub reexpansions: u64,
    /// Set exactly when `solved`.
    pub solution_cost: Option<Cost>,
    pub wall_time_s: f64,
    /// The cap that fired, if any.
    pub stop: Option<Stop>,
}

pub const CSV_HEADER: [&str; 10] = [
    "domain",
    "instance",
    "algorithm",
    "alpha",
    "additive",
    "solved",
    "expansions",
    "reexpansions",
    "solution_cost",
    "wall_time_s",
];

/// A constructed benchmark instance.
pub enum Instance {
    Chain(Chain),
    Coconut(Coconut),
    Mero(Mero),
    Puzzle(Puzzle),
    TopSpin(TopSpin),
}

/// Builds the instances of `config`, paired with their ids.
///
/// Ids are instance indices, except for Mérő (the size `d`) and the puzzle
/// (the 1-based line number in the instance file).
pub fn build_instances(config: &Config) -> Result<Vec<(u64, Instance)>, ConfigError> {
    let domain = config.validate()?;
    let seeds = || (0..config.instances).map(|i| (i, derive_seed(config.seed, i)));
    Ok(match domain {
        DomainKind::Chain => match &config.depths {
            Some(depths) => depths.iter().enumerate().map(|(i, &d)| (i as u64, Instance::Chain(Chain::new(d)))).collect(),
            None => seeds()
                .map(|(i, s)| (i, Instance::Chain(Chain::new(rng(s).random_range(1..=10_000)))))
                .collect(),
        },
        DomainKind::Coconut => seeds().map(|(i, s)| (i, Instance::Coconut(Coconut::from_seed(s)))).collect(),
        DomainKind::Mero => {
            let ds = config.d.clone().unwrap_or_else(|| vec![100]);
            ds.into_iter().map(|d| (u64::from(d), Instance::Mero(Mero::new(d)))).collect()
        }
        DomainKind::Puzzle | DomainKind::PuzzleReal => {
            let model = if domain == DomainKind::Puzzle { CostModel::Unit } else { CostModel::Real };
            let all = match &config.instance_file {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|source| ConfigError::Read { path: path.clone(), source })?;
                    parse_instances(&text).map_err(|e| ConfigError::Instances(e.to_string()))?
                }
                None => korf_instances(),
            };
            let ids: Vec<u64> = match &config.ids {
                Some(ids) => ids.clone(),
                None => (1..=config.instances.min(all.len() as u64)).collect(),
            };
            let mut out = Vec::with_capacity(ids.len());
            for id in ids {
                let tiles = all
                    .get(id as usize - 1)
                    .ok_or_else(|| ConfigError::Instances(format!("no instance {id} among {}", all.len())))?;
                let puzzle = Puzzle::new(*tiles, model).map_err(|e| ConfigError::Instances(format!("instance {id}: {e}")))?;
                out.push((id, Instance::Puzzle(puzzle)));
            }
            out
        }
        DomainKind::Topspin => {
            let mut out = Vec::new();
            for (i, s) in seeds() {
                let t = match &config.pdb_dir {
                    Some(dir) => TopSpin::with_cache(s, config.walk, dir)
                        .map_err(|source| ConfigError::Read { path: dir.clone(), source })?,
                    None => TopSpin::from_seed(s, config.walk),
                };
                out.push((i, Instance::TopSpin(t)));
            }
            out
        }
    })
}

struct Outcome {
    cost: Option<Cost>,
    expansions: u64,
    reexpansions: u64,
}

fn search<D: SearchDomain>(domain: D, algorithm: Algorithm, config: &Config) -> Outcome {
    let tree = TreeOptions { cycle_check: config.cycle_check(), ..TreeOptions::default() };
    let ibex = Driver::IbexEnhanced(IbexParams { alpha: config.alpha, additive: config.additive });
    let dov = Driver::DovEnhanced(DovParams { alpha: config.alpha, additive: config.additive, ..DovParams::default() });
    let report = match algorithm {
        Algorithm::IdaStar => ida_star(&domain, tree).map_path(drop),
        Algorithm::EdaStar => eda_star(&domain, config.gamma, tree).map_path(drop),
        Algorithm::IdaStarCr => ida_star_cr(&domain, CrParams::default(), tree).map_path(drop),
        Algorithm::Bts => bts(&domain, ibex, tree).map_path(drop),
        Algorithm::BtsSimple => bts(&domain, Driver::Ibex, tree).map_path(drop),
        Algorithm::Dovbts => bts(&domain, dov, tree).map_path(drop),
        Algorithm::DovbtsSimple => bts(&domain, Driver::Dov, tree).map_path(drop),
        Algorithm::Astar => astar(&domain).map_path(drop),
        Algorithm::AlgorithmB => algorithm_b(&domain).map_path(drop),
        Algorithm::AlgorithmBPrime => algorithm_b_prime(&domain, false).map_path(drop),
        Algorithm::Bgs => bgs(&domain, ibex).map_path(drop),
        Algorithm::BgsSimple => bgs(&domain, Driver::Ibex).map_path(drop),
        Algorithm::Dovbgs => bgs(&domain, dov).map_path(drop),
        Algorithm::DovbgsSimple => bgs(&domain, Driver::Dov).map_path(drop),
        Algorithm::AstarBgs => astar_with_bgs_fallback(&domain, ibex).0.map_path(drop),
    };
    Outcome { cost: report.cost(), expansions: report.expansions, reexpansions: report.reexpansions }
}

fn run_capped<D: SearchDomain>(domain: &D, algorithm: Algorithm, config: &Config) -> (Outcome, Option<Stop>) {
    let time_limit = config.time_limit_s.map(Duration::from_secs_f64);
    let metered = Metered::new(domain, config.expansion_cap, time_limit);
    let outcome = search(&metered, algorithm, config);
    (outcome, metered.stopped())
}

/// Runs `algorithm` on one instance under the configured caps.
pub fn run_one(instance: &Instance, id: u64, algorithm: Algorithm, config: &Config) -> RunRecord {
    let start = Instant::now();
    let (outcome, stop) = match instance {
        Instance::Chain(d) => run_capped(d, algorithm, config),
        Instance::Coconut(d) => run_capped(d, algorithm, config),
        Instance::Mero(d) => run_capped(d, algorithm, config),
        Instance::Puzzle(d) => run_capped(d, algorithm, config),
        Instance::TopSpin(d) => run_capped(d, algorithm, config),
    };
    let wall_time_s = start.elapsed().as_secs_f64();
    let solved = stop.is_none() && outcome.cost.is_some();
    RunRecord {
        domain: config.domain.expect("validated"),
        instance: id,
        algorithm,
        alpha: algorithm.uses_alpha().then_some(config.alpha),
        additive: algorithm.uses_alpha().then_some(config.additive),
        solved,
        expansions: outcome.expansions,
        reexpansions: outcome.reexpansions,
        solution_cost: if solved { outcome.cost } else { None },
        wall_time_s,
        stop,
    }
}

/// Runs the suite in parallel. Records come back sorted by instance, then
/// algorithm.
pub fn run_suite(config: &Config) -> Result<Vec<RunRecord>, ConfigError> {
    let instances = build_instances(config)?;
    let jobs: Vec<_> = instances
        .iter()
        .flat_map(|(id, inst)| config.algorithms.iter().map(move |&a| (*id, inst, a)))
        .collect();
    let mut records: Vec<RunRecord> = jobs.into_par_iter().map(|(id, inst, a)| run_one(inst, id, a, config)).collect();
    records.sort_by_key(|r| (r.domain, r.instance, r.algorithm));
    Ok(records)
}

/// Writes `records` as CSV, header first.
pub fn write_csv(records: &[RunRecord], out: impl io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.domain.to_string(),
            r.instance.to_string(),
            r.algorithm.to_string(),
            r.alpha.map(|a| a.to_string()).unwrap_or_default(),
            r.additive.map(|a| a.to_string()).unwrap_or_default(),
            r.solved.to_string(),
            r.expansions.to_string(),
            r.reexpansions.to_string(),
            r.solution_cost.map(|c| c.to_string()).unwrap_or_default(),
            format!("{:.6}", r.wall_time_s),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-algorithm summary of a suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub domain: DomainKind,
    pub algorithm: Algorithm,
    pub runs: u64,
    pub solved: u64,
    /// Mean expansions over solved runs; `None` when nothing was solved.
    pub mean_expansions_solved: Option<f64>,
    /// Mean expansions over all runs, capped runs included.
    pub mean_expansions_all: f64,
    pub mean_reexpansions_solved: Option<f64>,
    pub mean_wall_time_s: f64,
}

pub fn aggregate(records: &[RunRecord]) -> Vec<Aggregate> {
    let mut keys: Vec<_> = records.iter().map(|r| (r.domain, r.algorithm)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(domain, algorithm)| {
            let rows: Vec<_> = records.iter().filter(|r| r.domain == domain && r.algorithm == algorithm).collect();
            let solved: Vec<_> = rows.iter().filter(|r| r.solved).collect();
            let mean = |xs: &mut dyn Iterator<Item = f64>, n: usize| (n > 0).then(|| xs.sum::<f64>() / n as f64);
            Aggregate {
                domain,
                algorithm,
                runs: rows.len() as u64,
                solved: solved.len() as u64,
                mean_expansions_solved: mean(&mut solved.iter().map(|r| r.expansions as f64), solved.len()),
                mean_expansions_all: mean(&mut rows.iter().map(|r| r.expansions as f64), rows.len()).unwrap_or(0.0),
                mean_reexpansions_solved: mean(&mut solved.iter().map(|r| r.reexpansions as f64), solved.len()),
                mean_wall_time_s: mean(&mut rows.iter().map(|r| r.wall_time_s), rows.len()).unwrap_or(0.0),
            }
        })
        .collect()
}

/// Renders aggregates as an aligned text table.
pub fn format_aggregates(aggs: &[Aggregate]) -> String {
    let mut out = format!(
        "{:<12} {:<18} {:>7} {:>16} {:>16} {:>14} {:>10}\n",
        "domain", "algorithm", "solved", "exp(solved)", "exp(all)", "reexp(solved)", "time(s)"
    );
    let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.1}"));
    for a in aggs {
        let _ = writeln!(
            out,
            "{:<12} {:<18} {:>7} {:>16} {:>16.1} {:>14} {:>10.3}",
            a.domain.name(),
            a.algorithm.name(),
            format!("{}/{}", a.solved, a.runs),
            opt(a.mean_expansions_solved),
            a.mean_expansions_all,
            opt(a.mean_reexpansions_solved),
            a.mean_wall_time_s,
        );
    }
    out
}
