use super::c::LcsSampling;
use super::stats::{weighted_loglog_slope, EmpiricalDistribution};
use super::{replicate_fold, EstimatorError};
use crate::lcs::{lcs_rooted_with_budget, rooted_upper_bound};
use crate::offspring::OffspringLaw;
use crate::rng::Seeds;
use crate::samplers::{sample_bgw_truncated, sample_height_capped, DEFAULT_CAP};
use crate::lcs::DEFAULT_PAIR_BUDGET;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// LCS• of two independent Bienaymé trees.
    LcsRootedPair,
    /// LCS• of two independent root-biased trees.
    LcsRootedBiasedPair,
    /// Height of one Bienaymé tree (the second law is ignored).
    Height,
}

/// Empirical tail of a statistic on an integer grid. The histogram has one
/// bucket per value `0..=top` where the last bucket holds every value
/// `>= top = max(grid) + 1`; all grid probabilities are exact functions
/// of it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurvivalCurve {
    pub statistic: Statistic,
    pub grid: Vec<usize>,
    pub histogram: Vec<u64>,
    pub n_samples: u64,
    /// Pairs lost to the node cap or DP budget; they are recorded at
    /// their lower bound.
    pub n_censored: u64,
    /// `P(X > h)`.
    pub exceed: Vec<f64>,
    /// `P(X >= h)`.
    pub at_least: Vec<f64>,
    /// Log–log slope of `at_least` for heights and of `exceed` for LCS•;
    /// `None` when fewer than two grid points carry mass.
    pub slope: Option<f64>,
}

impl SurvivalCurve {
    /// The column the slope is fitted on.
    pub fn fitted(&self) -> &[f64] {
        match self.statistic {
            Statistic::Height => &self.at_least,
            _ => &self.exceed,
        }
    }

    pub fn stderr(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.n_samples.max(1) as f64).sqrt()
    }

    /// The capped sample `min(X, max(grid) + 1)`.
    pub fn distribution(&self) -> EmpiricalDistribution {
        EmpiricalDistribution::from_histogram(&self.histogram)
    }

    pub fn slope_undefined(&self) -> bool {
        self.slope.is_none()
    }
}

fn check_grid(grid: &[usize]) -> Result<(), EstimatorError> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EstimatorError::InvalidParameter("h_grid must be nonempty and strictly increasing".into()));
    }
    Ok(())
}

pub fn survival_curve(
    statistic: Statistic,
    law: &OffspringLaw,
    law2: &OffspringLaw,
    grid: &[usize],
    samples: u64,
    seeds: Seeds,
) -> Result<SurvivalCurve, EstimatorError> {
    check_grid(grid)?;
    let h_max = *grid.last().unwrap();
    let top = h_max + 1;
    if statistic != Statistic::Height {
        law.require_critical()?;
        law2.require_critical()?;
    }
    let limits = LcsSampling {
        cap: DEFAULT_CAP,
        max_depth: h_max,
        budget: DEFAULT_PAIR_BUDGET,
    };
    let (histogram, n_censored) = replicate_fold(
        seeds,
        samples,
        || (vec![0u64; top + 1], 0u64),
        |acc, _, rng| {
            let v = match statistic {
                Statistic::Height => sample_height_capped(law, rng, top),
                Statistic::LcsRootedPair | Statistic::LcsRootedBiasedPair => {
                    let p = limits.rooted_pair(law, law2, statistic == Statistic::LcsRootedBiasedPair, rng);
                    acc.1 += p.limited as u64;
                    p.value
                }
            };
            acc.0[v.min(top)] += 1;
        },
        |mut a, b| {
            a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
            (a.0, a.1 + b.1)
        },
    );
    let n = samples.max(1) as f64;
    // tail[k] = #{X >= k}
    let mut tail = vec![0u64; top + 2];
    for k in (0..=top).rev() {
        tail[k] = tail[k + 1] + histogram[k];
    }
    let exceed: Vec<f64> = grid.iter().map(|&h| tail[h + 1] as f64 / n).collect();
    let at_least: Vec<f64> = grid.iter().map(|&h| tail[h] as f64 / n).collect();
    let fitted = if statistic == Statistic::Height { &at_least } else { &exceed };
    let points: Vec<(f64, f64, f64)> = grid
        .iter()
        .zip(fitted)
        .filter(|(_, &p)| p > 0.0 && p < 1.0)
        .map(|(&h, &p)| (h as f64, p, n * p / (1.0 - p)))
        .collect();
    Ok(SurvivalCurve {
        statistic,
        grid: grid.to_vec(),
        histogram,
        n_samples: samples,
        n_censored,
        exceed,
        at_least,
        slope: weighted_loglog_slope(&points),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PEpsPoint {
    pub h: f64,
    pub p: f64,
    pub stderr: f64,
    pub hits: u64,
}

/// Frequency of `{m <= h and h^{-eps} LCS• > m + 1}` with
/// `m = min(Ht, Ht')`, for two independent Bienaymé trees.
///
/// Trees are grown to depth `floor(max h)`. On the event `m <= h` the
/// common rooted subtree lives within depth `m`, so the cut is harmless;
/// the DP only runs when the level-size bound can beat the threshold.
pub fn estimate_p_eps(
    law: &OffspringLaw,
    law2: &OffspringLaw,
    eps: f64,
    grid: &[f64],
    samples: u64,
    seeds: Seeds,
) -> Result<Vec<PEpsPoint>, EstimatorError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(EstimatorError::InvalidParameter(format!("eps = {eps} must be positive")));
    }
    if grid.is_empty() || grid.iter().any(|h| !(*h >= 0.0) || !h.is_finite()) {
        return Err(EstimatorError::InvalidParameter("h_grid must be nonempty, finite and nonnegative".into()));
    }
    law.require_critical()?;
    law2.require_critical()?;
    let depth = grid.iter().cloned().fold(0.0, f64::max).floor() as usize;
    let scale: Vec<f64> = grid.iter().map(|h| h.powf(eps)).collect();
    let hits = replicate_fold(
        seeds,
        samples,
        || vec![0u64; grid.len()],
        |acc, _, rng| {
            let (Ok(a), Ok(b)) = (
                sample_bgw_truncated(law, rng, depth, DEFAULT_CAP),
                sample_bgw_truncated(law2, rng, depth, DEFAULT_CAP),
            ) else {
                return;
            };
            let ht = |t: &crate::samplers::Truncated| if t.truncated { usize::MAX } else { t.tree.height() };
            let m = ht(&a).min(ht(&b));
            if m == usize::MAX {
                return;
            }
            let mf = m as f64;
            let need = grid
                .iter()
                .zip(&scale)
                .filter(|(h, _)| mf <= **h)
                .map(|(_, s)| s * (mf + 1.0))
                .fold(f64::INFINITY, f64::min);
            if !need.is_finite() || rooted_upper_bound(&a.tree, &b.tree) as f64 <= need {
                return;
            }
            let Ok(lcs) = lcs_rooted_with_budget(&a.tree, &b.tree, DEFAULT_PAIR_BUDGET) else {
                return;
            };
            for (k, (h, s)) in grid.iter().zip(&scale).enumerate() {
                if mf <= *h && lcs as f64 > s * (mf + 1.0) {
                    acc[k] += 1;
                }
            }
        },
        |mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let n = samples.max(1) as f64;
    Ok(grid
        .iter()
        .zip(&hits)
        .map(|(&h, &c)| {
            let p = c as f64 / n;
            PEpsPoint {
                h,
                p,
                stderr: (p * (1.0 - p) / n).sqrt(),
                hits: c,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offspring::{make_standard_law, LawSpec};

    fn law(s: LawSpec) -> OffspringLaw {
        make_standard_law(&s).unwrap()
    }

    #[test]
    fn height_curve_matches_recursion() {
        for spec in [LawSpec::BinaryHalf, LawSpec::GeometricHalf] {
            let l = law(spec);
            let grid = [1, 2, 4, 8, 16];
            let c = survival_curve(Statistic::Height, &l, &l, &grid, 200_000, Seeds::new(21)).unwrap();
            let exact = l.height_tail(17);
            for (i, &h) in grid.iter().enumerate() {
                let se = c.stderr(exact[h]);
                assert!((c.at_least[i] - exact[h]).abs() < 3.0 * se + 1e-12, "h={h} {} vs {}", c.at_least[i], exact[h]);
                assert!((c.exceed[i] - exact[h + 1]).abs() < 3.0 * c.stderr(exact[h + 1]) + 1e-12);
            }
            assert!(c.slope.unwrap() < -0.5);
        }
    }

    #[test]
    fn single_point_grid_has_no_slope() {
        let l = law(LawSpec::BinaryHalf);
        let c = survival_curve(Statistic::Height, &l, &l, &[5], 1000, Seeds::new(1)).unwrap();
        assert!(c.slope_undefined());
        assert!(survival_curve(Statistic::Height, &l, &l, &[5, 5], 10, Seeds::new(1)).is_err());
        assert!(survival_curve(Statistic::Height, &l, &l, &[], 10, Seeds::new(1)).is_err());
    }

    #[test]
    fn lcs_curve_is_monotone() {
        let l = law(LawSpec::GeometricHalf);
        let c = survival_curve(Statistic::LcsRootedBiasedPair, &l, &l, &[1, 2, 3, 5, 8], 20_000, Seeds::new(4)).unwrap();
        assert!(c.exceed.windows(2).all(|w| w[0] >= w[1]));
        assert!(c.exceed[0] > 0.0 && c.exceed[0] < 1.0);
        assert_eq!(c.histogram.iter().sum::<u64>(), 20_000);
        assert_eq!(c.distribution().len(), 20_000);
        // Root-biased trees always have a child, so LCS• ≥ 1 and usually more.
        let plain = survival_curve(Statistic::LcsRootedPair, &l, &l, &[1, 2, 3, 5, 8], 20_000, Seeds::new(4)).unwrap();
        assert!(plain.exceed[0] < c.exceed[0]);
    }

    #[test]
    fn p_eps_edge_cases() {
        let l = law(LawSpec::BinaryHalf);
        let p = estimate_p_eps(&l, &l, 10.0, &[2.0, 3.0, 5.0], 20_000, Seeds::new(2)).unwrap();
        assert!(p.iter().all(|x| x.p == 0.0));
        // Below 1 the event is {m = 0}: at least one tree is a single vertex (prob 3/4).
        let p = estimate_p_eps(&l, &l, 0.5, &[0.5], 40_000, Seeds::new(2)).unwrap();
        assert!((p[0].p - 0.75).abs() < 4.0 * p[0].stderr, "{p:?}");
        assert!(estimate_p_eps(&l, &l, 0.0, &[1.0], 10, Seeds::new(2)).is_err());
    }

    #[test]
    fn p_eps_pruning_agrees_with_direct_count() {
        use crate::rng::Seeds;
        use crate::samplers::sample_bgw_truncated;
        let l = law(LawSpec::GeometricHalf);
        let grid = [1.0, 2.0, 4.0];
        let seeds = Seeds::new(77);
        let n = 3000;
        let got = estimate_p_eps(&l, &l, 0.3, &grid, n, seeds).unwrap();
        let mut expect = [0u64; 3];
        for i in 0..n {
            let mut rng = seeds.stream(i);
            let a = sample_bgw_truncated(&l, &mut rng, 4, DEFAULT_CAP).unwrap();
            let b = sample_bgw_truncated(&l, &mut rng, 4, DEFAULT_CAP).unwrap();
            let ht = |t: &crate::samplers::Truncated| if t.truncated { 99 } else { t.tree.height() };
            let m = ht(&a).min(ht(&b)) as f64;
            let v = crate::lcs::lcs_rooted(&a.tree, &b.tree).unwrap() as f64;
            for (k, h) in grid.iter().enumerate() {
                if m <= *h && v > h.powf(0.3) * (m + 1.0) {
                    expect[k] += 1;
                }
            }
        }
        assert_eq!(got.iter().map(|p| p.hits).collect::<Vec<_>>(), expect.to_vec());
        assert!(expect.iter().any(|&c| c > 0));
    }
}
