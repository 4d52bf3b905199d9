//! Exact oracles and witness checkers.
//!
//! Everything here is deliberately independent of the algorithm
//! implementations it judges: reach trees are rebuilt from graphs and
//! arrival times, distributions come from brute-force order enumeration, and
//! the bound evaluators are plain closed forms.

pub mod bounds;
pub mod checks;
pub mod enumerate;
pub mod reach;
pub mod trees;

pub use bounds::{evaluate, factorial, Bound, BoundValue, DomainError};
pub use checks::{check_error_path_witness, check_increasing_path_witness, WitnessReport};
pub use enumerate::{enumerate_orders, ExactDistribution, EnumerationError, DEFAULT_ENUMERATION_CAP};
pub use reach::{reach_tree, OrientedReachTree};
pub use trees::nonisomorphic_trees;
