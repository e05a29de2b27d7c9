//! Exact largest-common-subtree computations and brute-force oracles.

mod brute;
mod rooted;
mod span;
mod tripod;
mod unrooted;

pub use brute::{
    lcs_rooted_bruteforce, lcs_unrooted_bruteforce, rooted_subtree_forms, unrooted_subtree_forms,
    BRUTE_FORCE_PAIR_LIMIT,
};
pub use rooted::{lcs_rooted, lcs_rooted_witness, lcs_rooted_with_budget, rooted_upper_bound};
pub use span::{lcs_n_bruteforce, span_length, LCSN_MAX_LEAVES, LCSN_MAX_SIZE};
pub use tripod::{lcs3_length, lcs3_of_frontiers, tripod_frontier, TripodFrontier};
pub use unrooted::{lcs_unrooted, lcs_unrooted_witness, lcs_unrooted_with_budget};

use thiserror::Error;

/// Default cap on DP states (node pairs for LCS•, oriented-edge pairs for LCS).
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LcsError {
    #[error("resource limit: {needed} DP states exceed the budget of {budget}")]
    ResourceLimit { needed: u64, budget: u64 },
    #[error("input too large for the brute-force oracle: {0}")]
    TooLarge(String),
    #[error("node {0} not in tree")]
    NodeNotFound(usize),
}

/// A common subtree given as matched vertex pairs `(u in t, u' in t')`.
pub type Witness = Vec<(usize, usize)>;
