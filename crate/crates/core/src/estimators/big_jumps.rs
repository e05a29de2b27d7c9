use super::stats::weighted_slope;
use super::{replicate_fold, EstimatorError};
use crate::offspring::{exact_size_law, LawSpec, EXACT_SIZE_MAX};
use crate::rng::Seeds;
use rand::Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

/// Step distribution of the random walk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepLaw {
    /// `±U^{-1/α}` with a fair sign; `P(|X| > x) = x^{-α}` for `x >= 1`.
    SymmetricPareto,
    /// Total progeny `#τ` of a critical finite-variance Bienaymé tree;
    /// a tail of order `x^{-1/2}`, so only `α = 1/2` is allowed.
    TreeSize { law: LawSpec },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigJumpsResult {
    pub alpha: f64,
    pub s: f64,
    pub m: u64,
    pub samples: u64,
    pub t_grid: Vec<f64>,
    /// `P̂(S_m >= t m^{1/α})`.
    pub exceed: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Minus the weighted slope of `ln P̂` against `t`.
    pub fitted_rate: Option<f64>,
    pub target_rate: f64,
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `P(#τ = n)` for `n = 1..=n_max` (entry `n - 1`), from the closed form of
/// `P(S_n = n - 1) / n` for the standard laws, else by exact convolution.
pub fn tree_size_pmf(spec: &LawSpec, n_max: usize) -> Result<Vec<f64>, EstimatorError> {
    let lf = ln_factorials(2 * n_max + 2);
    let ln_choose = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    let ln2 = std::f64::consts::LN_2;
    let walk = |n: usize| -> f64 {
        let j = n - 1;
        let ln_p = match spec {
            LawSpec::GeometricHalf => ln_choose(2 * n - 2, n - 1) - (2 * n - 1) as f64 * ln2,
            LawSpec::PoissonOne => -(n as f64) + (n as f64).ln() * j as f64 - lf[j],
            LawSpec::BinaryHalf | LawSpec::DAry { .. } => {
                let d = match spec {
                    LawSpec::DAry { d } => *d,
                    _ => 2,
                };
                if !j.is_multiple_of(d) {
                    return 0.0;
                }
                let k = j / d;
                let q = 1.0 / d as f64;
                ln_choose(n, k) + k as f64 * q.ln() + (n - k) as f64 * (1.0 - q).ln()
            }
            _ => unreachable!(),
        };
        ln_p.exp() / n as f64
    };
    match spec {
        LawSpec::GeometricHalf | LawSpec::PoissonOne | LawSpec::BinaryHalf | LawSpec::DAry { .. } => {
            Ok((1..=n_max).map(walk).collect())
        }
        _ if n_max <= EXACT_SIZE_MAX => Ok(exact_size_law(&spec.build()?, n_max)?),
        _ => Err(EstimatorError::InvalidParameter(format!(
            "tree-size steps for {} need n_max <= {EXACT_SIZE_MAX}",
            spec.label()
        ))),
    }
}

enum Stepper {
    Pareto { inv_alpha: f64, cut: f64 },
    Table { values: Vec<f64>, alias: WeightedAliasIndex<f64> },
}

impl Stepper {
    fn step<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Stepper::Pareto { inv_alpha, cut } => {
                let u = 1.0 - rng.random::<f64>();
                let x = u.powf(-inv_alpha);
                if rng.random::<bool>() {
                    x.min(*cut)
                } else {
                    -x
                }
            }
            Stepper::Table { values, alias } => values[alias.sample(rng)],
        }
    }
}

/// Exceedance curve of `S_m = Σ_{i<=m} min(X_i, s m^{1/α})`.
pub fn big_jumps_check(
    alpha: f64,
    s: f64,
    m: u64,
    t_grid: &[f64],
    step: &StepLaw,
    samples: u64,
    seeds: Seeds,
) -> Result<BigJumpsResult, EstimatorError> {
    if !(alpha > 0.0 && alpha < 2.0 && alpha != 1.0) {
        return Err(EstimatorError::InvalidAlpha(alpha));
    }
    if !(s > 0.0) || m == 0 || t_grid.is_empty() {
        return Err(EstimatorError::InvalidParameter("need s > 0, m >= 1 and a nonempty t grid".into()));
    }
    let scale = (m as f64).powf(1.0 / alpha);
    let cut = s * scale;
    let stepper = match step {
        StepLaw::SymmetricPareto => Stepper::Pareto { inv_alpha: 1.0 / alpha, cut },
        StepLaw::TreeSize { law } => {
            if alpha != 0.5 {
                return Err(EstimatorError::InvalidAlpha(alpha));
            }
            spec_is_critical(law)?;
            let top = cut.floor().max(1.0) as usize;
            let mut w = tree_size_pmf(law, top)?;
            let mass: f64 = w.iter().sum();
            *w.last_mut().unwrap() += (1.0 - mass).max(0.0);
            let values: Vec<f64> = (1..=top).map(|k| (k as f64).min(cut)).collect();
            let alias = WeightedAliasIndex::new(w)
                .map_err(|e| EstimatorError::InvalidParameter(format!("size table: {e}")))?;
            Stepper::Table { values, alias }
        }
    };
    let thresholds: Vec<f64> = t_grid.iter().map(|t| t * scale).collect();
    let hits = replicate_fold(
        seeds,
        samples,
        || vec![0u64; thresholds.len()],
        |acc, _, rng| {
            let total: f64 = (0..m).map(|_| stepper.step(rng)).sum();
            for (k, th) in thresholds.iter().enumerate() {
                if total >= *th {
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
    let exceed: Vec<f64> = hits.iter().map(|&c| c as f64 / n).collect();
    let stderr: Vec<f64> = exceed.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect();
    let pts: Vec<(f64, f64, f64)> = t_grid
        .iter()
        .zip(&exceed)
        .filter(|(_, &p)| p > 0.0 && p < 1.0)
        .map(|(&t, &p)| (t, p.ln(), n * p / (1.0 - p)))
        .collect();
    Ok(BigJumpsResult {
        alpha,
        s,
        m,
        samples,
        t_grid: t_grid.to_vec(),
        exceed,
        stderr,
        fitted_rate: weighted_slope(&pts).map(|b| -b),
        target_rate: 1.0 / s,
    })
}

fn spec_is_critical(spec: &LawSpec) -> Result<(), EstimatorError> {
    spec.build()?.require_critical()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offspring::make_standard_law;

    #[test]
    fn closed_forms_match_convolution() {
        for spec in [LawSpec::BinaryHalf, LawSpec::GeometricHalf, LawSpec::PoissonOne, LawSpec::DAry { d: 3 }] {
            let a = tree_size_pmf(&spec, 40).unwrap();
            let b = exact_size_law(&make_standard_law(&spec).unwrap(), 40).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9, "{spec:?} {x} {y}");
            }
        }
        assert!(tree_size_pmf(&LawSpec::Logtail { lambda: 1.5 }, 100).is_err());
    }

    #[test]
    fn invalid_alpha() {
        let g = [1.0];
        for a in [0.0, 1.0, 2.0, -1.0, f64::NAN] {
            assert!(matches!(
                big_jumps_check(a, 1.0, 1, &g, &StepLaw::SymmetricPareto, 10, Seeds::new(1)),
                Err(EstimatorError::InvalidAlpha(_))
            ));
        }
        let ts = StepLaw::TreeSize { law: LawSpec::BinaryHalf };
        assert!(matches!(
            big_jumps_check(1.5, 1.0, 1, &g, &ts, 10, Seeds::new(1)),
            Err(EstimatorError::InvalidAlpha(_))
        ));
    }

    #[test]
    fn single_step_closed_form() {
        // m = 1: P(min(X, s) >= t) = t^{-α}/2 for 1 <= t <= s.
        let grid = [0.0, 1.5, 2.5, 4.0];
        let r = big_jumps_check(1.5, 3.0, 1, &grid, &StepLaw::SymmetricPareto, 200_000, Seeds::new(4)).unwrap();
        let exact = [0.5, 0.5 * 1.5f64.powf(-1.5), 0.5 * 2.5f64.powf(-1.5), 0.0];
        for k in 0..grid.len() {
            let se = (exact[k] * (1.0 - exact[k]) / 200_000.0).sqrt();
            assert!((r.exceed[k] - exact[k]).abs() <= 3.0 * se + 1e-12, "{k} {} {}", r.exceed[k], exact[k]);
        }
        // Tree sizes: P(min(#τ, 5) >= 4) = P(#τ >= 4) = 1 - P(1) - P(3) for the binary law.
        let ts = StepLaw::TreeSize { law: LawSpec::BinaryHalf };
        let r = big_jumps_check(0.5, 5.0, 1, &[4.0, 6.0], &ts, 200_000, Seeds::new(5)).unwrap();
        let p = 1.0 - 0.5 - 0.125;
        assert!((r.exceed[0] - p).abs() < 3.0 * (p * (1.0 - p) / 200_000.0).sqrt());
        assert_eq!(r.exceed[1], 0.0);
    }
}
