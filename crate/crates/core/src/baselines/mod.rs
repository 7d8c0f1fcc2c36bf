//! Comparison algorithms.
//!
//! The iterative-deepening family runs on the original, unshifted domain
//! through the same tree query as BTS. The best-first family shares one
//! engine.

pub mod astar;
pub mod ida;

pub use astar::{algorithm_b, algorithm_b_prime, astar, BestFirst};
pub use ida::{eda_star, ida_star, ida_star_cr, CrParams};
