//! Iterative budgeted exponential search (IBEX) for heuristic search.
//!
//! The crate is organised bottom-up:
//!
//! - [`cost`] and [`query`]: costs, brackets, and the [`BudgetedQuery`] trait.
//! - [`model`]: the abstract cost-list model and a synthetic query oracle.
//! - [`expsearch`], [`search`], [`ubs`], [`dovibex`]: the drivers.
//! - [`tree`] and [`graph`]: budgeted queries over a [`SearchDomain`], and
//!   the resulting BTS, BGS, DovBTS and DovBGS searches.
//! - [`domain`]: the domain trait, the unit-floor shift and benchmark domains.
//! - [`baselines`]: IDA*, EDA*, IDA*_CR, A*, B and B'.

pub mod baselines;
pub mod cost;
pub mod domain;
pub mod driver;
pub mod dovibex;
pub mod expsearch;
pub mod graph;
pub mod model;
pub mod query;
pub mod rng;
pub mod search;
pub mod tree;
pub mod ubs;

pub use cost::{Cost, CostInterval};
pub use domain::{SearchDomain, Shifted};
pub use driver::Driver;
pub use dovibex::{dovibex, dovibex_enhanced, DovParams};
pub use expsearch::{exp_search, exp_search_bounded, ExpSearch};
pub use graph::{bgs, GraphQuery};
pub use model::{n_exp, FeedbackMode, ModelError, SyntheticQuery, ValueList};
pub use query::{Budget, BudgetedQuery, Instrumented, QueryOutcome, SearchReport, Solution, UNLIMITED};
pub use search::{ibex_enhanced, ibex_simple, IbexParams};
pub use tree::{bts, CycleCheck, TreeOptions, TreeQuery};
pub use ubs::{ubs, Segment, Slot};
