use super::stats::{median_of_means, EstimateResult, Method};
use super::{replicate_map, EstimatorError};
use crate::lcs::{lcs_rooted_with_budget, DEFAULT_PAIR_BUDGET};
use crate::offspring::OffspringLaw;
use crate::rng::Seeds;
use crate::samplers::{sample_bgw_truncated, sample_root_biased_truncated, Truncated, DEFAULT_CAP};
use rand::Rng;

/// Resource limits for one pair of rooted trees.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LcsSampling {
    /// Node cap per tree.
    pub cap: usize,
    /// Trees are grown to this depth only; LCS• values up to
    /// `max_depth + 1` stay exact.
    pub max_depth: usize,
    /// DP state budget per pair.
    pub budget: u64,
}

impl Default for LcsSampling {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            max_depth: 1000,
            budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

/// LCS• of one sampled pair. When `censored`, `value` is a lower bound;
/// `limited` marks the subset caused by the node cap or the DP budget
/// rather than by the depth cut.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairValue {
    pub value: usize,
    pub censored: bool,
    pub limited: bool,
}

impl LcsSampling {
    /// Draws a pair (root-biased when `biased`) and computes LCS•.
    ///
    /// Truncating both trees at depth `D` changes LCS• only when it
    /// exceeds `D`, in which case the truncated value is still `> D`.
    pub fn rooted_pair<R: Rng + ?Sized>(&self, law: &OffspringLaw, law2: &OffspringLaw, biased: bool, rng: &mut R) -> PairValue {
        let draw = |l: &OffspringLaw, rng: &mut R| -> Option<Truncated> {
            let r = if biased {
                sample_root_biased_truncated(l, rng, self.max_depth, self.cap)
            } else {
                sample_bgw_truncated(l, rng, self.max_depth, self.cap)
            };
            r.ok()
        };
        let a = draw(law, rng);
        let b = draw(law2, rng);
        let (Some(a), Some(b)) = (a, b) else {
            return PairValue {
                value: 1,
                censored: true,
                limited: true,
            };
        };
        match lcs_rooted_with_budget(&a.tree, &b.tree, self.budget) {
            Ok(v) => PairValue {
                value: v,
                censored: v > self.max_depth,
                limited: false,
            },
            Err(_) => PairValue {
                value: a.tree.height().min(b.tree.height()) + 1,
                censored: true,
                limited: true,
            },
        }
    }
}

/// Median-of-means estimate of `E[LCS•(τ*, τ*')]` over root-biased pairs.
/// Censored pairs contribute their lower bound and are counted.
pub fn estimate_c(
    law: &OffspringLaw,
    law2: &OffspringLaw,
    samples: u64,
    seeds: Seeds,
    limits: LcsSampling,
) -> Result<EstimateResult, EstimatorError> {
    law.require_critical()?;
    law2.require_critical()?;
    if samples == 0 {
        return Ok(EstimateResult::degenerate(Method::MedianOfMeans, seeds.master));
    }
    let pairs = replicate_map(seeds, samples, |_, rng| limits.rooted_pair(law, law2, true, rng));
    let censored = pairs.iter().filter(|p| p.censored).count() as u64;
    let values: Vec<f64> = pairs.iter().map(|p| p.value as f64).collect();
    Ok(median_of_means(&values, censored, seeds.master))
}
