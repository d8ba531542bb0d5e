//! Cultural algorithm and GA solvers for the 0-1 knapsack problem.
//!
//! The crate provides:
//! - [`problem`]: instance/solution types and the penalized fitness function,
//! - [`format`]: the plain-text instance file format,
//! - [`oracle`]: exact solvers (enumeration, DP) and a greedy baseline,
//! - [`evolution`]: the GA engine with the adaptive rate schedule,
//! - [`cultural`]: the belief space and the cultural main loop,
//! - [`bench`]: builtin benchmark instances, multi-run statistics, CSV export.

pub mod bench;
pub mod cli;
pub mod cultural;
pub mod error;
pub mod evolution;
pub mod format;
pub mod oracle;
pub mod problem;

pub use error::{Error, Result};
pub use problem::{EvaluatedSolution, FitnessMode, Instance, Solution};
