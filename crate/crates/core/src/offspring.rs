//! Offspring distributions on ℕ.
//!
//! An [`OffspringLaw`] is an immutable, validated probability vector together
//! with its cached moments and alias tables for O(1) sampling. Infinite-support
//! families are truncated where the dropped tail mass falls below
//! [`TAIL_EPSILON`]; the truncated vector is then renormalized and, for laws
//! that are critical before truncation, re-centred so that the mean is 1 again.

use rand::Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tail mass below which an infinite-support pmf is cut off.
pub const TAIL_EPSILON: f64 = 1e-12;

/// Tolerance on `Σ k μ(k) = 1` for a law to count as critical.
pub const CRITICAL_TOLERANCE: f64 = 1e-9;

/// Largest `n_max` accepted by [`exact_size_law`].
pub const EXACT_SIZE_MAX: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LawError {
    #[error("pmf is not summable (total mass {0})")]
    NonSummable(f64),
    #[error("negative mass {value} at k = {k}")]
    NegativeMass { k: usize, value: f64 },
    #[error("law is not critical (mean {mean}, mass at zero {zero_mass})")]
    NotCritical { mean: f64, zero_mass: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("log-tail law infeasible for lambda = {0}")]
    Infeasible(f64),
    #[error("moment of order {0} diverges")]
    Diverged(f64),
    #[error("exact size law limited to n_max <= {EXACT_SIZE_MAX}, got {0}")]
    Overflow(usize),
}

/// How the law behaves beyond its stored support; drives the tail-summability
/// test in [`OffspringLaw::p_moment`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TailModel {
    /// Support is genuinely finite.
    Finite,
    /// Raw pmf `2^{-(k+1)}`.
    Geometric,
    /// Raw pmf `e^{-1}/k!`.
    Poisson,
    /// Raw pmf `weight · k^{-power} · ln(k)^{-log_power}`.
    PowerLog { weight: f64, power: f64, log_power: f64 },
}

/// Serializable law description, as it appears in harness configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawSpec {
    GeometricHalf,
    PoissonOne,
    BinaryHalf,
    DAry { d: usize },
    Logtail { lambda: f64 },
    Custom { pmf: Vec<f64> },
}

impl LawSpec {
    pub fn build(&self) -> Result<OffspringLaw, LawError> {
        match self {
            LawSpec::Logtail { lambda } => make_logtail_law(*lambda),
            other => make_standard_law(other),
        }
    }

    /// Short stable label used in CSV rows and file names.
    pub fn label(&self) -> String {
        match self {
            LawSpec::GeometricHalf => "geometric_half".into(),
            LawSpec::PoissonOne => "poisson_one".into(),
            LawSpec::BinaryHalf => "binary_half".into(),
            LawSpec::DAry { d } => format!("d_ary_{d}"),
            LawSpec::Logtail { lambda } => format!("logtail_{lambda}"),
            LawSpec::Custom { .. } => "custom".into(),
        }
    }
}

/// Parses a label (`geometric_half`, `d_ary_3`, `logtail_1.5`, ...) or a
/// JSON object such as `{"kind":"custom","pmf":[0.5,0,0.5]}`.
impl std::str::FromStr for LawSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| e.to_string());
        }
        let num = |rest: &str| rest.parse::<f64>().map_err(|e| format!("{s}: {e}"));
        match s {
            "geometric_half" => Ok(LawSpec::GeometricHalf),
            "poisson_one" => Ok(LawSpec::PoissonOne),
            "binary_half" => Ok(LawSpec::BinaryHalf),
            _ => {
                if let Some(d) = s.strip_prefix("d_ary_") {
                    Ok(LawSpec::DAry {
                        d: d.parse().map_err(|e| format!("{s}: {e}"))?,
                    })
                } else if let Some(l) = s.strip_prefix("logtail_") {
                    Ok(LawSpec::Logtail { lambda: num(l)? })
                } else {
                    Err(format!("unknown law `{s}`"))
                }
            }
        }
    }
}

/// Numeric moments of a law with the error committed by truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    /// Upper bound on the mass of the raw law dropped by truncation.
    pub truncation_error: f64,
}

/// A validated offspring distribution.
#[derive(Debug, Clone)]
pub struct OffspringLaw {
    spec: LawSpec,
    pmf: Vec<f64>,
    support_gcd: usize,
    mean: f64,
    variance: f64,
    critical: bool,
    tail: TailModel,
    dropped_mass: f64,
    sampler: WeightedAliasIndex<f64>,
    /// Alias table for `k μ(k) / m`, k ≥ 1 (spine offspring; root-biased
    /// degree is this minus one).
    size_biased: Option<WeightedAliasIndex<f64>>,
}

impl OffspringLaw {
    fn finish(
        spec: LawSpec,
        mut pmf: Vec<f64>,
        tail: TailModel,
        dropped_mass: f64,
        recentre: bool,
    ) -> Result<Self, LawError> {
        for (k, &p) in pmf.iter().enumerate() {
            if p < 0.0 || p.is_nan() {
                return Err(LawError::NegativeMass { k, value: p });
            }
        }
        let total = compensated_sum(pmf.iter().copied());
        if !total.is_finite() || total <= 0.0 {
            return Err(LawError::NonSummable(total));
        }
        for p in pmf.iter_mut() {
            *p /= total;
        }
        if recentre && pmf.len() > 1 {
            // Shift mass between 0 and 1 so Σ k p_k = 1 exactly again.
            let mean = weighted_index_sum(&pmf, 1);
            let delta = 1.0 - mean;
            if delta > 0.0 && pmf[0] >= delta {
                pmf[0] -= delta;
                pmf[1] += delta;
            } else if delta < 0.0 && pmf[1] >= -delta {
                pmf[1] += delta;
                pmf[0] -= delta;
            }
        }
        while pmf.len() > 1 && pmf.last() == Some(&0.0) {
            pmf.pop();
        }

        let mean = weighted_index_sum(&pmf, 1);
        let variance = compensated_sum(
            pmf.iter()
                .enumerate()
                .map(|(k, &p)| (k as f64 - 1.0) * (k as f64 - 1.0) * p),
        );
        let support_gcd = pmf
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .fold(0usize, |g, (k, _)| gcd(g, k))
            .max(1);
        let critical = (mean - 1.0).abs() <= CRITICAL_TOLERANCE && pmf[0] > 0.0;

        let sampler = WeightedAliasIndex::new(pmf.clone())
            .map_err(|_| LawError::NonSummable(total))?;
        let size_biased = if mean > 0.0 {
            let weights: Vec<f64> = pmf
                .iter()
                .enumerate()
                .map(|(k, &p)| k as f64 * p)
                .collect();
            WeightedAliasIndex::new(weights).ok()
        } else {
            None
        };

        Ok(Self {
            spec,
            pmf,
            support_gcd,
            mean,
            variance,
            critical,
            tail,
            dropped_mass,
            sampler,
            size_biased,
        })
    }

    pub fn spec(&self) -> &LawSpec {
        &self.spec
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// `μ(k)`, zero outside the stored support.
    pub fn prob(&self, k: usize) -> f64 {
        self.pmf.get(k).copied().unwrap_or(0.0)
    }

    /// Largest stored index (the truncation point for infinite laws).
    pub fn max_degree(&self) -> usize {
        self.pmf.len() - 1
    }

    pub fn support_gcd(&self) -> usize {
        self.support_gcd
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `σ² = Σ (k-1)² μ(k)`.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn is_critical(&self) -> bool {
        self.critical
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    pub fn require_critical(&self) -> Result<&Self, LawError> {
        if self.critical {
            Ok(self)
        } else {
            Err(LawError::NotCritical {
                mean: self.mean,
                zero_mass: self.pmf[0],
            })
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.sampler.sample(rng)
    }

    /// Draw from `k μ(k) / m` (offspring count of a spine vertex).
    #[inline]
    pub fn sample_size_biased<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.size_biased
            .as_ref()
            .expect("size-biased law needs positive mean")
            .sample(rng)
    }

    /// Draw from `(k+1) μ(k+1)` (root degree of a root-biased tree).
    #[inline]
    pub fn sample_root_biased<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.sample_size_biased(rng) - 1
    }

    /// Probability generating function `Σ μ(k) s^k`.
    pub fn pgf(&self, s: f64) -> f64 {
        self.pmf.iter().rev().fold(0.0, |acc, &p| acc * s + p)
    }

    pub fn moments(&self) -> Moments {
        Moments {
            mean: self.mean,
            variance: self.variance,
            truncation_error: self.dropped_mass,
        }
    }

    /// `Σ k^p μ(k)` over the stored support, after checking that the raw
    /// (untruncated) series converges. Returns the value and a bound on the
    /// contribution of the truncated tail.
    pub fn p_moment(&self, p: f64) -> Result<(f64, f64), LawError> {
        if !(0.0..=4.0).contains(&p) {
            return Err(LawError::InvalidParameter(format!(
                "moment order {p} outside [0, 4]"
            )));
        }
        let value = compensated_sum(
            self.pmf
                .iter()
                .enumerate()
                .map(|(k, &q)| if k == 0 { if p == 0.0 { q } else { 0.0 } } else { (k as f64).powf(p) * q }),
        );
        let k_max = self.max_degree();
        let remainder = match self.tail {
            TailModel::Finite => 0.0,
            TailModel::Geometric => series_remainder(k_max, p, |k| 0.5f64.powi(k as i32 + 1)),
            TailModel::Poisson => {
                series_remainder(k_max, p, |k| (-1.0 - ln_factorial(k)).exp())
            }
            TailModel::PowerLog { weight, power, log_power } => {
                // Σ_{k>K} k^{p-power} ln^{-log_power} k via the integral bound.
                let e = power - p;
                let lk = (k_max as f64).ln();
                if e > 1.0 {
                    weight * (k_max as f64).powf(1.0 - e) / ((e - 1.0) * lk.powf(log_power))
                } else if e == 1.0 && log_power > 1.0 {
                    weight * lk.powf(1.0 - log_power) / (log_power - 1.0)
                } else {
                    return Err(LawError::Diverged(p));
                }
            }
        };
        Ok((value, remainder))
    }

    /// `P(Ht(τ) ≥ h)` for `h = 0..=h_max`, from the recursion
    /// `P(Ht ≤ h) = f(P(Ht ≤ h-1))`, `P(Ht ≤ 0) = μ(0)`.
    pub fn height_tail(&self, h_max: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(h_max + 1);
        out.push(1.0);
        let mut at_most = self.pmf[0];
        for _ in 1..=h_max {
            out.push(1.0 - at_most);
            at_most = self.pgf(at_most);
        }
        out
    }
}

fn series_remainder(k_max: usize, p: f64, raw: impl Fn(usize) -> f64) -> f64 {
    let mut total = 0.0;
    for k in k_max + 1..k_max + 10_000 {
        let term = (k as f64).powf(p) * raw(k);
        total += term;
        if term < 1e-300 || (term < total * 1e-18 && k > k_max + 10) {
            break;
        }
    }
    total
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Kahan–Babuška summation.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn weighted_index_sum(pmf: &[f64], power: i32) -> f64 {
    compensated_sum(pmf.iter().enumerate().map(|(k, &p)| (k as f64).powi(power) * p))
}

/// Truncate `raw(k)` at the first K whose remaining tail mass is below
/// [`TAIL_EPSILON`]. `tail_after(K)` must bound `Σ_{k>K} raw(k)`.
fn truncate(raw: impl Fn(usize) -> f64, tail_after: impl Fn(usize, f64) -> f64) -> (Vec<f64>, f64) {
    let mut pmf = Vec::new();
    let mut k = 0;
    loop {
        let p = raw(k);
        pmf.push(p);
        let rest = tail_after(k, p);
        if rest < TAIL_EPSILON {
            return (pmf, rest);
        }
        k += 1;
    }
}

/// Build one of the named laws (everything except the log-tail family).
pub fn make_standard_law(spec: &LawSpec) -> Result<OffspringLaw, LawError> {
    match spec {
        LawSpec::GeometricHalf => {
            // Σ_{k>K} 2^{-(k+1)} = 2^{-(K+1)} = raw(K).
            let (pmf, dropped) = truncate(|k| 0.5f64.powi(k as i32 + 1), |_, p| p);
            OffspringLaw::finish(spec.clone(), pmf, TailModel::Geometric, dropped, true)
        }
        LawSpec::PoissonOne => {
            // Σ_{k>K} e^{-1}/k! ≤ raw(K) / K for K ≥ 1.
            let (pmf, dropped) = truncate(
                |k| (-1.0 - ln_factorial(k)).exp(),
                |k, p| if k == 0 { 1.0 } else { p / k as f64 },
            );
            OffspringLaw::finish(spec.clone(), pmf, TailModel::Poisson, dropped, true)
        }
        LawSpec::BinaryHalf => {
            OffspringLaw::finish(spec.clone(), vec![0.5, 0.0, 0.5], TailModel::Finite, 0.0, false)
        }
        LawSpec::DAry { d } => {
            if *d < 2 {
                return Err(LawError::InvalidParameter(format!("d-ary law needs d >= 2, got {d}")));
            }
            let mut pmf = vec![0.0; d + 1];
            pmf[0] = 1.0 - 1.0 / *d as f64;
            pmf[*d] = 1.0 / *d as f64;
            OffspringLaw::finish(spec.clone(), pmf, TailModel::Finite, 0.0, false)
        }
        LawSpec::Custom { pmf } => {
            if pmf.is_empty() {
                return Err(LawError::NonSummable(0.0));
            }
            OffspringLaw::finish(spec.clone(), pmf.clone(), TailModel::Finite, 0.0, false)
        }
        LawSpec::Logtail { lambda } => make_logtail_law(*lambda),
    }
}

/// Critical law with `μ(k) = w k^{-3} ln(k)^{-λ}` for k ≥ 2; the masses at 0
/// and 1 are solved from the mass and mean constraints.
pub fn make_logtail_law(lambda: f64) -> Result<OffspringLaw, LawError> {
    if !(lambda > 1.0 && lambda < 2.0) {
        return Err(LawError::Infeasible(lambda));
    }
    let shape = |k: usize| {
        let x = k as f64;
        x.powi(-3) * x.ln().powf(-lambda)
    };
    // Weights never exceed 1, so the w = 1 tail bound fixes the cut-off.
    let tail_bound = |k: usize| {
        let x = k as f64;
        x.ln().powf(-lambda) / (2.0 * x * x)
    };
    let mut k_max = 2;
    while tail_bound(k_max) >= TAIL_EPSILON {
        k_max = (k_max as f64 * 1.1).ceil() as usize;
    }
    while k_max > 2 && tail_bound(k_max - 1) < TAIL_EPSILON {
        k_max -= 1;
    }
    // Sum small terms first.
    let mass_tail = compensated_sum((2..=k_max).rev().map(shape));
    let mean_tail = compensated_sum((2..=k_max).rev().map(|k| k as f64 * shape(k)));

    let mut weight = 1.0;
    for _ in 0..60 {
        let p1 = 1.0 - weight * mean_tail;
        let p0 = weight * (mean_tail - mass_tail);
        if p1 > 0.0 && p0 > 0.0 {
            let mut pmf = Vec::with_capacity(k_max + 1);
            pmf.push(p0);
            pmf.push(p1);
            pmf.extend((2..=k_max).map(|k| weight * shape(k)));
            let tail = TailModel::PowerLog {
                weight,
                power: 3.0,
                log_power: lambda,
            };
            return OffspringLaw::finish(
                LawSpec::Logtail { lambda },
                pmf,
                tail,
                weight * tail_bound(k_max),
                false,
            );
        }
        weight *= 0.5;
    }
    Err(LawError::Infeasible(lambda))
}

/// `P(#τ = n)` for `n = 1..=n_max` (entry `n-1`), via Kemperman's formula
/// `P(#τ = n) = P(S_n = n-1) / n` with `S_n` a sum of n offspring draws.
pub fn exact_size_law(law: &OffspringLaw, n_max: usize) -> Result<Vec<f64>, LawError> {
    if n_max > EXACT_SIZE_MAX {
        return Err(LawError::Overflow(n_max));
    }
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let width = n_max; // S_n values 0..n_max-1 are all that matter
    let step: Vec<f64> = (0..width).map(|k| law.prob(k)).collect();
    let mut dist = vec![0.0; width];
    dist[0] = 1.0; // S_0 = 0
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut next = vec![0.0; width];
        for (s, slot) in next.iter_mut().enumerate() {
            *slot = compensated_sum((0..=s).map(|k| step[k] * dist[s - k]));
        }
        dist = next;
        out.push(dist[n - 1] / n as f64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    #[test]
    fn labels_round_trip() {
        for spec in [
            LawSpec::GeometricHalf,
            LawSpec::PoissonOne,
            LawSpec::BinaryHalf,
            LawSpec::DAry { d: 4 },
            LawSpec::Logtail { lambda: 1.5 },
        ] {
            assert_eq!(spec.label().parse::<LawSpec>().unwrap(), spec);
        }
        let c: LawSpec = r#"{"kind":"custom","pmf":[0.5,0,0.5]}"#.parse().unwrap();
        assert_eq!(c, LawSpec::Custom { pmf: vec![0.5, 0.0, 0.5] });
        assert!("nope".parse::<LawSpec>().is_err());
    }

    use super::*;

    fn law(spec: LawSpec) -> OffspringLaw {
        spec.build().unwrap()
    }

    #[test]
    fn geometric_half_pmf_and_moments() {
        let g = law(LawSpec::GeometricHalf);
        for k in 0..10 {
            assert!((g.prob(k) - 0.5f64.powi(k as i32 + 1)).abs() < 1e-9);
        }
        assert!((g.mean() - 1.0).abs() < CRITICAL_TOLERANCE);
        // Σ (k-1)^2 2^{-(k+1)}: E[k^2] - 2E[k] + 1 = 3 - 2 + 1.
        assert!((g.variance() - 2.0).abs() < 1e-8);
        assert!(g.is_critical());
        assert_eq!(g.support_gcd(), 1);
    }

    #[test]
    fn binary_half_is_critical_with_gcd_two() {
        let b = law(LawSpec::BinaryHalf);
        assert_eq!(b.pmf(), &[0.5, 0.0, 0.5]);
        assert_eq!(b.mean(), 1.0);
        assert_eq!(b.variance(), 1.0);
        assert_eq!(b.support_gcd(), 2);
    }

    #[test]
    fn poisson_variance_one() {
        let p = law(LawSpec::PoissonOne);
        assert!((p.variance() - 1.0).abs() < 1e-9);
        assert!((p.mean() - 1.0).abs() < CRITICAL_TOLERANCE);
        let total: f64 = p.pmf().iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn d_ary_and_errors() {
        let t = law(LawSpec::DAry { d: 3 });
        assert_eq!(t.support_gcd(), 3);
        assert!(t.is_critical());
        assert!(matches!(
            LawSpec::DAry { d: 1 }.build(),
            Err(LawError::InvalidParameter(_))
        ));
        assert!(matches!(
            LawSpec::Custom { pmf: vec![0.5, -0.1, 0.6] }.build(),
            Err(LawError::NegativeMass { k: 1, .. })
        ));
        assert!(matches!(
            LawSpec::Custom { pmf: vec![f64::INFINITY, 1.0] }.build(),
            Err(LawError::NonSummable(_))
        ));
        let sub = law(LawSpec::Custom { pmf: vec![0.6, 0.4] });
        assert!(!sub.is_critical());
        assert!(matches!(sub.require_critical(), Err(LawError::NotCritical { .. })));
    }

    #[test]
    fn logtail_law_is_critical() {
        let l = make_logtail_law(1.5).unwrap();
        assert!((l.mean() - 1.0).abs() < CRITICAL_TOLERANCE);
        assert!(l.prob(0) > 0.0 && l.prob(1) > 0.0);
        assert!(l.pmf().iter().all(|&p| p > 0.0));
        let total: f64 = compensated_sum(l.pmf().iter().copied());
        assert!((total - 1.0).abs() < 1e-9);
        let (second, rem) = l.p_moment(2.0).unwrap();
        assert!(second.is_finite() && rem.is_finite() && rem < 1.0);
        assert!(matches!(l.p_moment(2.5), Err(LawError::Diverged(_))));
        assert!(matches!(make_logtail_law(0.5), Err(LawError::Infeasible(_))));
        assert!(matches!(make_logtail_law(2.0), Err(LawError::Infeasible(_))));
    }

    #[test]
    fn logtail_second_moment_tail_shrinks() {
        // k^2 · k^{-3} ln^{-1.5} k is summable: partial sums must stabilise.
        let partial = |n: usize| -> f64 {
            (2..n).map(|k| { let x = k as f64; x.powi(-1) * x.ln().powf(-1.5) }).sum()
        };
        let a = partial(10_000);
        let b = partial(100_000);
        let c = partial(1_000_000);
        assert!(c - b < b - a);
        // Integral tail bound 2 / sqrt(ln K) at K = 10^6.
        assert!(c - b < 2.0 / (100_000f64).ln().sqrt());
    }

    #[test]
    fn exact_size_law_small_values() {
        let b = law(LawSpec::BinaryHalf);
        let s = exact_size_law(&b, 9).unwrap();
        assert_eq!(s[0], 0.5);
        assert_eq!(s[1], 0.0);
        assert!((s[2] - 0.125).abs() < 1e-15);
        for (i, &p) in s.iter().enumerate() {
            let n = i + 1;
            assert_eq!(p > 0.0, n % 2 == 1, "n = {n}");
        }
        let g = law(LawSpec::GeometricHalf);
        let s = exact_size_law(&g, 8).unwrap();
        assert!((s[1] - 0.125).abs() < 1e-9);
        assert!(matches!(exact_size_law(&g, 65), Err(LawError::Overflow(65))));
    }

    #[test]
    fn exact_size_law_mass_approaches_one() {
        let g = law(LawSpec::GeometricHalf);
        let s = exact_size_law(&g, 64).unwrap();
        let total: f64 = s.iter().sum();
        // Remaining mass ~ 2c / sqrt(64) for the geometric law (c = 1/(2 sqrt(pi))).
        assert!(total < 1.0 && total > 0.85);
    }

    #[test]
    fn height_tail_geometric_closed_form() {
        let g = law(LawSpec::GeometricHalf);
        let tail = g.height_tail(50);
        for (h, &p) in tail.iter().enumerate() {
            assert!((p - 1.0 / (h as f64 + 1.0)).abs() < 1e-9, "h = {h}");
        }
    }

    #[test]
    fn law_spec_json_shape() {
        let spec: LawSpec = serde_json::from_str(r#"{"kind":"d_ary","d":3}"#).unwrap();
        assert_eq!(spec, LawSpec::DAry { d: 3 });
        let spec: LawSpec = serde_json::from_str(r#"{"kind":"logtail","lambda":1.5}"#).unwrap();
        assert_eq!(spec, LawSpec::Logtail { lambda: 1.5 });
        let spec: LawSpec = serde_json::from_str(r#"{"kind":"geometric_half"}"#).unwrap();
        assert_eq!(spec, LawSpec::GeometricHalf);
    }
}
