//! Exact pattern densities in permutation inflations.
//!
//! * [`perm`]: permutations, notation, inflation, rotation.
//! * [`counting`]: pattern occurrence counts and exact densities.
//! * [`partitions`]: block-partitions (generalized-inflation decompositions).
//! * [`limits`]: exact limit densities of patterns in inflations.
//! * [`criteria`]: 2-/3-inflatability, admissible lengths, composition.
//! * [`search`]: pruned exhaustive search for 3-inflatable permutations.
//! * [`montecarlo`]: seeded empirical estimates of limit densities.
//! * [`plot`]: ASCII and SVG permutation plots.

pub mod counting;
pub mod criteria;
pub mod error;
pub mod limits;
pub mod montecarlo;
pub mod partitions;
pub mod perm;
pub mod plot;
pub mod rational;
pub mod search;

pub use counting::{count_length3_all, count_occurrences, density, PatternCounts3};
pub use criteria::{check_3_inflatable, compose_inflatables, InflatabilityReport};
pub use error::{Error, Result};
pub use limits::{limit_density_inflation, limit_density_uniform, DensityProfile};
pub use partitions::{block_partitions, BlockPartition};
pub use perm::{format_permutation, parse_permutation, Permutation, Style};
pub use rational::Rational;
