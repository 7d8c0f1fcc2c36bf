use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ibex_cli::config::{Algorithm, Config, CycleCheckName, DomainKind};
use ibex_cli::runner::format_aggregates;
use ibex_cli::{aggregate, run_suite, verify_bounds, write_csv, Suite};

const EXIT_CONFIG: u8 = 1;
const EXIT_VERIFY: u8 = 2;

/// Runs search benchmarks, or verifies expansion bounds with --verify.
///
/// Flags override the values read from --config.
#[derive(Debug, Parser)]
#[command(name = "ibex", version)]
struct Cli {
    /// TOML suite configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    domain: Option<DomainKind>,
    /// Repeatable; also accepts a comma-separated list.
    #[arg(long = "algorithm", value_enum, value_delimiter = ',')]
    algorithms: Vec<Algorithm>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    additive: bool,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    instances: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    expansion_cap: Option<u64>,
    #[arg(long)]
    time_limit_s: Option<f64>,
    #[arg(long, value_enum)]
    cycle_check: Option<CycleCheckName>,
    /// Chain depths, comma-separated.
    #[arg(long, value_delimiter = ',')]
    depths: Vec<u32>,
    /// Mérő sizes, comma-separated.
    #[arg(long = "mero-d", value_delimiter = ',')]
    d: Vec<u32>,
    /// 1-based puzzle instance numbers, comma-separated.
    #[arg(long, value_delimiter = ',')]
    ids: Vec<u64>,
    #[arg(long)]
    pdb_dir: Option<PathBuf>,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Verify bounds instead of running a suite: a suite name or `all`.
    #[arg(long)]
    verify: Option<String>,
    /// Trials per verification suite.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

impl Cli {
    fn into_config(self) -> Result<Config, String> {
        let mut c = match &self.config {
            Some(path) => Config::load(path).map_err(|e| e.to_string())?,
            None => Config::default(),
        };
        c.domain = self.domain.or(c.domain);
        if !self.algorithms.is_empty() {
            c.algorithms = self.algorithms;
        }
        c.alpha = self.alpha.unwrap_or(c.alpha);
        c.additive |= self.additive;
        c.gamma = self.gamma.unwrap_or(c.gamma);
        c.instances = self.instances.unwrap_or(c.instances);
        c.seed = self.seed.unwrap_or(c.seed);
        c.expansion_cap = self.expansion_cap.unwrap_or(c.expansion_cap);
        c.time_limit_s = self.time_limit_s.or(c.time_limit_s);
        c.cycle_check = self.cycle_check.or(c.cycle_check);
        if !self.depths.is_empty() {
            c.depths = Some(self.depths);
        }
        if !self.d.is_empty() {
            c.d = Some(self.d);
        }
        if !self.ids.is_empty() {
            c.ids = Some(self.ids);
        }
        c.pdb_dir = self.pdb_dir.or(c.pdb_dir);
        c.out = self.out.or(c.out);
        c.validate().map_err(|e| e.to_string())?;
        Ok(c)
    }
}

fn parse_suites(name: &str) -> Option<Vec<Suite>> {
    if name == "all" {
        return Some(Suite::ALL.to_vec());
    }
    Suite::ALL.into_iter().find(|s| s.name() == name).map(|s| vec![s])
}

fn verify(name: &str, trials: u64, seed: u64) -> ExitCode {
    let Some(suites) = parse_suites(name) else {
        eprintln!("error: unknown suite {name:?}; expected thm1, prop12, thm2, thm3, thm4 or all");
        return ExitCode::from(EXIT_CONFIG);
    };
    if trials == 0 {
        eprintln!("error: --trials must be at least 1");
        return ExitCode::from(EXIT_CONFIG);
    }
    let mut ok = true;
    for suite in suites {
        let report = verify_bounds(suite, trials, seed);
        print!("{report}");
        ok &= report.passed();
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if let Some(name) = cli.verify.clone() {
        return verify(&name, cli.trials, cli.seed.unwrap_or(0));
    }
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let records = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let written = match &config.out {
        Some(path) => File::create(path).map_err(csv::Error::from).and_then(|f| write_csv(&records, BufWriter::new(f))),
        None => write_csv(&records, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write CSV: {e}");
        return ExitCode::FAILURE;
    }
    let summary = format_aggregates(&aggregate(&records));
    if config.out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    let _ = io::stdout().flush();
    ExitCode::SUCCESS
}
