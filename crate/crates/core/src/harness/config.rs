use super::HarnessError;
use crate::estimators::{StepLaw, Statistic};
use crate::offspring::{LawSpec, OffspringLaw};
use crate::samplers::size_is_supported;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    SamplerValidation,
    LcsOracle,
    MainTheorem,
    RootedTail,
    HeightVsLcs,
    ManyToOne,
    BigJumps,
    StarCounterexample,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::SamplerValidation => "sampler_validation",
            Scenario::LcsOracle => "lcs_oracle",
            Scenario::MainTheorem => "main_theorem",
            Scenario::RootedTail => "rooted_tail",
            Scenario::HeightVsLcs => "height_vs_lcs",
            Scenario::ManyToOne => "many_to_one",
            Scenario::BigJumps => "big_jumps",
            Scenario::StarCounterexample => "star_counterexample",
        }
    }

    pub(crate) fn tag(&self) -> u64 {
        *self as u64 + 1
    }

    /// Whether `n_list` holds tree sizes that must carry positive mass.
    fn conditions_on_size(&self) -> bool {
        matches!(
            self,
            Scenario::SamplerValidation | Scenario::MainTheorem | Scenario::StarCounterexample
        )
    }
}

/// Scenario-specific knobs; every field has a default.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioOptions {
    /// Root-biased pairs behind ĉ (`main_theorem`), default 10⁴.
    pub c_samples: Option<u64>,
    /// Integer grid for `rooted_tail`, default `10..=100` log-spaced.
    pub h_grid: Option<Vec<usize>>,
    /// Statistic for `rooted_tail`, default `lcs_rooted_pair`.
    pub statistic: Option<Statistic>,
    /// `height_vs_lcs` exponent, default 0.5.
    pub eps: Option<f64>,
    /// `height_vs_lcs` grid, default `[10, 20, 40]`.
    pub p_grid: Option<Vec<f64>>,
    /// `big_jumps`: tail index (default 0.5), truncation scale (1), walk
    /// length (100), threshold grid (`2..=8`) and step law (tree sizes
    /// under `law`).
    pub alpha: Option<f64>,
    pub s: Option<f64>,
    pub m: Option<u64>,
    pub t_grid: Option<Vec<f64>>,
    pub step: Option<StepLaw>,
    /// `star_counterexample`: branch count and replicates of the star bound.
    pub delta: Option<usize>,
    pub star_samples: Option<u64>,
    /// Unconditioned draws for the size-law check of `sampler_validation`,
    /// default `samples`.
    pub size_samples: Option<u64>,
    /// DP state budget per pair.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub law: LawSpec,
    /// Second law; defaults to `law`.
    #[serde(default)]
    pub law2: Option<LawSpec>,
    #[serde(default)]
    pub n_list: Vec<usize>,
    pub samples: u64,
    pub master_seed: u64,
    /// Worker hint; never affects results.
    #[serde(default)]
    pub workers: Option<usize>,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub options: ScenarioOptions,
}

pub(crate) const DEFAULT_H_GRID: [usize; 11] = [10, 13, 16, 20, 25, 32, 40, 50, 63, 79, 100];

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn laws(&self) -> Result<(OffspringLaw, OffspringLaw), HarnessError> {
        let build = |s: &LawSpec| s.build().map_err(|e| HarnessError::Config(format!("{}: {e}", s.label())));
        let a = build(&self.law)?;
        let b = build(self.law2.as_ref().unwrap_or(&self.law))?;
        Ok((a, b))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let (a, b) = self.laws()?;
        if self.n_list.contains(&0) {
            return Err(HarnessError::Config("n_list entries must be positive".into()));
        }
        if self.scenario.conditions_on_size() {
            for &n in &self.n_list {
                if !size_is_supported(&a, n) || (self.scenario == Scenario::MainTheorem && !size_is_supported(&b, n)) {
                    return Err(HarnessError::Config(format!("size {n} has zero mass under the configured law")));
                }
            }
        }
        let needs_critical = !matches!(self.scenario, Scenario::LcsOracle | Scenario::BigJumps);
        if needs_critical {
            for l in [&a, &b] {
                l.require_critical()
                    .map_err(|e| HarnessError::Config(format!("{}: {e}", l.spec().label())))?;
            }
        }
        if let Some(g) = &self.options.h_grid {
            if g.is_empty() || g.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HarnessError::Config("h_grid must be strictly increasing".into()));
            }
        }
        if self.workers == Some(0) {
            return Err(HarnessError::Config("workers must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let c = ExperimentConfig::from_json(
            r#"{"scenario":"main_theorem","law":{"kind":"geometric_half"},"n_list":[8],
                "samples":3,"master_seed":1,"output_dir":"/tmp/x"}"#,
        )
        .unwrap();
        assert_eq!(c.scenario, Scenario::MainTheorem);
        assert!(c.validate().is_ok());
        assert!(ExperimentConfig::from_json(r#"{"scenario":"nope"}"#).is_err());
    }

    #[test]
    fn rejects_unsupported_sizes() {
        let mut c = ExperimentConfig::from_json(
            r#"{"scenario":"sampler_validation","law":{"kind":"binary_half"},"n_list":[4],
                "samples":3,"master_seed":1,"output_dir":"/tmp/x"}"#,
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(HarnessError::Config(_))));
        c.n_list = vec![5];
        assert!(c.validate().is_ok());
    }
}
