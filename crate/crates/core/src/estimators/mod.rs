//! Monte-Carlo estimators. Every replicate `i` draws from its own stream
//! `seeds.stream(i)` and reductions run over fixed index chunks merged in
//! order, so results do not depend on the number of worker threads.

mod big_jumps;
mod c;
mod m2o;
mod mc;
mod star;
mod stats;
mod tails;

pub use big_jumps::{big_jumps_check, tree_size_pmf, BigJumpsResult, StepLaw};
pub use c::{estimate_c, LcsSampling, PairValue};
pub use m2o::{builtin_library, many_to_one_check, FSpec, GSpec, ManyToOne};
pub use mc::{replicate_fold, replicate_map};
pub use star::{sample_star_tree, star_bound_value, star_lower_bound, StarParams};
pub use stats::{
    ks_distance, mean_estimate, median_of_means, wasserstein1, weighted_loglog_slope, EmpiricalDistribution,
    EstimateResult, Method,
};
pub use tails::{estimate_p_eps, survival_curve, PEpsPoint, Statistic, SurvivalCurve};

use crate::offspring::LawError;
use crate::samplers::SamplerError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("empty sample")]
    Empty,
    #[error("alpha = {0} must lie in (0,1) or (1,2) and suit the step law")]
    InvalidAlpha(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Law(#[from] LawError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}
