//! Extremal constructions, the `𝒢ₙ` membership test, clique structure and
//! brute-force minimum searches.

mod brute;
mod cliques;
mod construct;
mod membership;

pub use brute::{brute_min_mono, BruteMin};
pub use cliques::{clique_partition_5, maximal_mono_cliques, EXACT_PARTITION_LIMIT, MAX_CLIQUE_N};
pub use construct::{build_gex, pentagon_base, ClassPartition};
pub use membership::{is_member_gn, GnMembership, GnWitness, DEFAULT_NODE_BUDGET};
