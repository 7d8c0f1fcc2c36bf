//! Suite configuration: a flat TOML file, overridable from the command line.
//!
//! ```toml
//! domain = "chain"
//! algorithms = ["ida_star", "bts"]
//! depths = [10, 100, 1000]
//! alpha = 8.0
//! expansion_cap = 100000000
//! ```
//!
//! Keys:
//!
//! | key | default | meaning |
//! |---|---|---|
//! | `domain` | required | `chain`, `coconut`, `mero`, `puzzle`, `puzzle_real`, `topspin` |
//! | `algorithms` | `[]` | see [`Algorithm`] |
//! | `alpha` | 8 | budget growth window of the IBEX drivers |
//! | `additive` | false | additive exponential phase |
//! | `gamma` | 2 | EDA* threshold ratio |
//! | `instances` | 100 | number of generated instances |
//! | `seed` | 0 | instance `i` uses `derive_seed(seed, i)` |
//! | `expansion_cap` | 10^8 | per run |
//! | `time_limit_s` | none | per run |
//! | `cycle_check` | `parent` for puzzle and topspin, else `none` | tree algorithms only |
//! | `depths` | random in 1..=10000 | chain depths, one instance each |
//! | `d` | `[100]` | Mérő sizes, one instance each |
//! | `ids` | first `instances` | 1-based puzzle instance numbers |
//! | `instance_file` | bundled corpus | puzzle instances, one per line |
//! | `walk` | 30 | TopSpin scramble length |
//! | `pdb_dir` | none | TopSpin pattern database cache |
//! | `out` | none | CSV path |

use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use ibex::CycleCheck;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum DomainKind {
    Chain,
    Coconut,
    Mero,
    /// 15-puzzle, unit costs.
    Puzzle,
    /// 15-puzzle, moving tile `t` costs `1 + 1/(t+1)`.
    PuzzleReal,
    Topspin,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Chain => "chain",
            DomainKind::Coconut => "coconut",
            DomainKind::Mero => "mero",
            DomainKind::Puzzle => "puzzle",
            DomainKind::PuzzleReal => "puzzle_real",
            DomainKind::Topspin => "topspin",
        }
    }

    /// Whether the domain is better searched as a graph.
    pub fn default_cycle_check(self) -> CycleCheck {
        match self {
            DomainKind::Puzzle | DomainKind::PuzzleReal | DomainKind::Topspin => CycleCheck::Parent,
            _ => CycleCheck::None,
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Algorithm {
    IdaStar,
    EdaStar,
    IdaStarCr,
    /// Enhanced IBEX over the tree query.
    Bts,
    /// Plain IBEX over the tree query.
    BtsSimple,
    /// Enhanced DovIBEX over the tree query.
    Dovbts,
    DovbtsSimple,
    Astar,
    AlgorithmB,
    AlgorithmBPrime,
    /// Enhanced IBEX over the graph query.
    Bgs,
    BgsSimple,
    Dovbgs,
    DovbgsSimple,
    /// A*, switching to BGS when re-expansions dominate.
    AstarBgs,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::IdaStar => "ida_star",
            Algorithm::EdaStar => "eda_star",
            Algorithm::IdaStarCr => "ida_star_cr",
            Algorithm::Bts => "bts",
            Algorithm::BtsSimple => "bts_simple",
            Algorithm::Dovbts => "dovbts",
            Algorithm::DovbtsSimple => "dovbts_simple",
            Algorithm::Astar => "astar",
            Algorithm::AlgorithmB => "algorithm_b",
            Algorithm::AlgorithmBPrime => "algorithm_b_prime",
            Algorithm::Bgs => "bgs",
            Algorithm::BgsSimple => "bgs_simple",
            Algorithm::Dovbgs => "dovbgs",
            Algorithm::DovbgsSimple => "dovbgs_simple",
            Algorithm::AstarBgs => "astar_bgs",
        }
    }

    /// Whether `alpha` and `additive` affect the algorithm.
    pub fn uses_alpha(self) -> bool {
        matches!(self, Algorithm::Bts | Algorithm::Dovbts | Algorithm::Bgs | Algorithm::Dovbgs | Algorithm::AstarBgs)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum CycleCheckName {
    None,
    Parent,
    Path,
}

impl From<CycleCheckName> for CycleCheck {
    fn from(c: CycleCheckName) -> CycleCheck {
        match c {
            CycleCheckName::None => CycleCheck::None,
            CycleCheckName::Parent => CycleCheck::Parent,
            CycleCheckName::Path => CycleCheck::Path,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("no domain given")]
    MissingDomain,
    #[error("{key} = {value}: {reason}")]
    Invalid { key: &'static str, value: String, reason: &'static str },
    #[error("cannot load instances: {0}")]
    Instances(String),
}

/// A validated suite configuration.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub domain: Option<DomainKind>,
    #[serde(default)]
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub additive: bool,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_instances")]
    pub instances: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_cap")]
    pub expansion_cap: u64,
    pub time_limit_s: Option<f64>,
    pub cycle_check: Option<CycleCheckName>,
    pub depths: Option<Vec<u32>>,
    pub d: Option<Vec<u32>>,
    pub ids: Option<Vec<u64>>,
    pub instance_file: Option<PathBuf>,
    #[serde(default = "default_walk")]
    pub walk: u32,
    pub pdb_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

fn default_alpha() -> f64 {
    8.0
}

fn default_gamma() -> f64 {
    2.0
}

fn default_instances() -> u64 {
    100
}

fn default_cap() -> u64 {
    100_000_000
}

fn default_walk() -> u32 {
    30
}

impl Default for Config {
    fn default() -> Config {
        toml::from_str("").expect("all keys have defaults")
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        Config::from_toml(&text)
    }

    pub fn cycle_check(&self) -> CycleCheck {
        match (self.cycle_check, self.domain) {
            (Some(c), _) => c.into(),
            (None, Some(d)) => d.default_cycle_check(),
            (None, None) => CycleCheck::None,
        }
    }

    /// Checks value ranges; returns the domain.
    pub fn validate(&self) -> Result<DomainKind, ConfigError> {
        let invalid = |key, value: &dyn fmt::Display, reason| ConfigError::Invalid { key, value: value.to_string(), reason };
        let domain = self.domain.ok_or(ConfigError::MissingDomain)?;
        if !(self.alpha >= 2.0 && self.alpha.is_finite()) {
            return Err(invalid("alpha", &self.alpha, "must be a finite number >= 2"));
        }
        if !(self.gamma > 1.0 && self.gamma.is_finite()) {
            return Err(invalid("gamma", &self.gamma, "must be a finite number > 1"));
        }
        if let Some(t) = self.time_limit_s {
            if t.is_nan() || t <= 0.0 {
                return Err(invalid("time_limit_s", &t, "must be positive"));
            }
        }
        if self.expansion_cap == 0 {
            return Err(invalid("expansion_cap", &0, "must be positive"));
        }
        if let Some(depths) = &self.depths {
            if depths.contains(&0) {
                return Err(invalid("depths", &0, "chain depths must be >= 1"));
            }
        }
        if let Some(ds) = &self.d {
            if let Some(d) = ds.iter().find(|&&d| d < 2) {
                return Err(invalid("d", d, "Mérő sizes must be >= 2"));
            }
        }
        if let Some(ids) = &self.ids {
            if ids.contains(&0) {
                return Err(invalid("ids", &0, "puzzle instance numbers start at 1"));
            }
        }
        Ok(domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_toml() {
        let c = Config::from_toml("domain = \"mero\"\nd = [100]\nalgorithms = [\"astar\", \"bgs\"]\n").unwrap();
        assert_eq!(c.domain, Some(DomainKind::Mero));
        assert_eq!(c.algorithms, [Algorithm::Astar, Algorithm::Bgs]);
        assert_eq!(c.alpha, 8.0);
        assert_eq!(c.expansion_cap, 100_000_000);
        assert_eq!(c.validate().unwrap(), DomainKind::Mero);
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(Config::from_toml("domain = \"maze\"").is_err());
        assert!(Config::from_toml("algorithms = [\"rbfs\"]").is_err());
        assert!(Config::from_toml("colour = 1").is_err());
    }

    #[test]
    fn rejects_bad_values() {
        let c = Config::from_toml("domain = \"chain\"\nalpha = 1.5").unwrap();
        assert!(matches!(c.validate(), Err(ConfigError::Invalid { key: "alpha", .. })));
        assert!(matches!(Config::default().validate(), Err(ConfigError::MissingDomain)));
    }

    #[test]
    fn names_match_parsers() {
        for a in Algorithm::value_variants() {
            assert_eq!(Algorithm::from_str(a.name(), false), Ok(*a));
            let parsed: Config = toml::from_str(&format!("algorithms = [\"{a}\"]")).unwrap();
            assert_eq!(parsed.algorithms, [*a]);
        }
        for d in DomainKind::value_variants() {
            assert_eq!(DomainKind::from_str(d.name(), false), Ok(*d));
        }
    }
}
