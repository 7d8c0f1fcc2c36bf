//! Benchmark harness for the `ibex` crate: seeded instance suites with
//! expansion and time caps, CSV output, and randomized verification of the
//! expansion bounds.

pub mod config;
pub mod runner;
pub mod verify;

pub use config::{Algorithm, Config, ConfigError, DomainKind};
pub use runner::{aggregate, run_suite, write_csv, Aggregate, RunRecord};
pub use verify::{verify_bounds, Report, Suite};
