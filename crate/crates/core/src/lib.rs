//! Sorting signed permutations ("burnt pancakes") by prefix signed reversals.
//!
//! - [`perm`]: signed permutations, flips, reversals, doubling.
//! - [`graph`]: breakpoint graphs, cycles, orientation, components.
//! - [`distance`]: the prefix exchange distance, the lower bound `g(π)` and
//!   the exact distance of simple permutations.
//! - [`sorter`]: an optimal sorter for simple permutations.
//! - [`oracle`] and [`verify`]: exhaustive BFS ground truth and the checks
//!   run against it.

pub mod cli;
pub mod distance;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod perm;
pub mod sorter;
pub mod verify;

pub use distance::{prefix_exchange_distance, psrd_lower_bound, psrd_simple, DistanceReport};
pub use error::{Error, Result};
pub use graph::BreakpointGraph;
pub use oracle::{build_oracle, enumerate_simple, Generators, OracleTable};
pub use perm::{mimic_as_prefix_flips, parse_permutation, DoubledPermutation, FlipSequence, SignedPermutation};
pub use sorter::{sort_simple, SortTrace};
