//! Random Bienaymé trees and their largest common subtrees.
//!
//! * [`offspring`]: offspring laws, exact size law, moments.
//! * [`trees`]: arena plane trees, Łukasiewicz paths, structural operators.
//! * [`samplers`]: Bienaymé, size-conditioned, root-biased and spine samplers.
//! * [`assignment`]: integer maximum-weight bipartite matching.
//! * [`lcs`]: rooted, unrooted, tripod and bounded-leaf common subtrees.
//! * [`estimators`]: Monte-Carlo estimators with censoring-aware summaries.
//! * [`harness`]: reproducible experiment runs and their summaries.

pub mod assignment;
pub mod estimators;
pub mod harness;
pub mod lcs;
pub mod offspring;
pub mod rng;
pub mod samplers;
pub mod trees;

pub use offspring::{LawError, LawSpec, OffspringLaw};
pub use rng::{Seeds, StreamRng};
pub use trees::{NodeId, PlaneTree, TreeError};
