use super::EstimatorError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Mean,
    MedianOfMeans,
    EmpiricalCdf,
}

/// Point estimate with an interval. `seed` is the master seed of the lane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_samples: u64,
    pub n_censored: u64,
    pub method: Method,
    pub seed: u64,
}

impl EstimateResult {
    pub fn degenerate(method: Method, seed: u64) -> Self {
        Self {
            point: f64::NAN,
            ci_low: f64::NEG_INFINITY,
            ci_high: f64::INFINITY,
            n_samples: 0,
            n_censored: 0,
            method,
            seed,
        }
    }

    pub fn censored_fraction(&self) -> f64 {
        if self.n_samples == 0 {
            0.0
        } else {
            self.n_censored as f64 / self.n_samples as f64
        }
    }

    pub fn width(&self) -> f64 {
        self.ci_high - self.ci_low
    }
}

const Z95: f64 = 1.959_963_984_540_054;

/// Sample mean with a normal 95% interval.
pub fn mean_estimate(values: &[f64], n_censored: u64, seed: u64) -> EstimateResult {
    let n = values.len();
    if n == 0 {
        return EstimateResult::degenerate(Method::Mean, seed);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = if n > 1 {
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let half = Z95 * (var / n as f64).sqrt();
    EstimateResult {
        point: mean,
        ci_low: mean - half,
        ci_high: mean + half,
        n_samples: n as u64,
        n_censored,
        method: Method::Mean,
        seed,
    }
}

/// Median of `B = ceil(N^{1/3})` contiguous block means. The interval is
/// the distribution-free 95% order-statistic interval for the median of
/// the block means.
pub fn median_of_means(values: &[f64], n_censored: u64, seed: u64) -> EstimateResult {
    let n = values.len();
    if n == 0 {
        return EstimateResult::degenerate(Method::MedianOfMeans, seed);
    }
    let b = block_count(n);
    let mut means: Vec<f64> = (0..b)
        .map(|j| {
            let lo = j * n / b;
            let hi = (j + 1) * n / b;
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    means.sort_by(f64::total_cmp);
    let point = median_sorted(&means);
    let half = 0.5 * Z95 * (b as f64).sqrt();
    let lo = ((b as f64 / 2.0 - half).floor().max(0.0)) as usize;
    let hi = ((b as f64 / 2.0 + half).ceil() as usize).min(b - 1);
    EstimateResult {
        point,
        ci_low: means[lo].min(point),
        ci_high: means[hi].max(point),
        n_samples: n as u64,
        n_censored,
        method: Method::MedianOfMeans,
        seed,
    }
}

fn block_count(n: usize) -> usize {
    let mut b = (n as f64).cbrt().ceil() as usize;
    while b > 1 && (b - 1).pow(3) >= n {
        b -= 1;
    }
    while b.pow(3) < n {
        b += 1;
    }
    b.clamp(1, n)
}

fn median_sorted(v: &[f64]) -> f64 {
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Sorted sample with uniform weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    values: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.retain(|x| !x.is_nan());
        values.sort_by(f64::total_cmp);
        Self { values }
    }

    /// `counts[k]` copies of the value `k`.
    pub fn from_histogram(counts: &[u64]) -> Self {
        let mut values = Vec::with_capacity(counts.iter().sum::<u64>() as usize);
        for (k, &c) in counts.iter().enumerate() {
            values.extend(std::iter::repeat_n(k as f64, c as usize));
        }
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of values `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.values.is_empty() {
            return f64::NAN;
        }
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.values.iter().map(|v| v * factor).collect())
    }
}

/// Walks the merged support, calling `f(x, next_x, F_a(x), F_b(x))`
/// for each support point in increasing order.
fn merged<F: FnMut(f64, Option<f64>, f64, f64)>(a: &EmpiricalDistribution, b: &EmpiricalDistribution, mut f: F) {
    let (va, vb) = (&a.values, &b.values);
    let (na, nb) = (va.len() as f64, vb.len() as f64);
    let (mut i, mut j) = (0, 0);
    while i < va.len() || j < vb.len() {
        let x = match (va.get(i), vb.get(j)) {
            (Some(&p), Some(&q)) => p.min(q),
            (Some(&p), None) => p,
            (None, Some(&q)) => q,
            (None, None) => unreachable!(),
        };
        while i < va.len() && va[i] <= x {
            i += 1;
        }
        while j < vb.len() && vb[j] <= x {
            j += 1;
        }
        let next = match (va.get(i), vb.get(j)) {
            (Some(&p), Some(&q)) => Some(p.min(q)),
            (Some(&p), None) => Some(p),
            (None, Some(&q)) => Some(q),
            (None, None) => None,
        };
        f(x, next, i as f64 / na, j as f64 / nb);
    }
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`.
pub fn ks_distance(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> Result<f64, EstimatorError> {
    if a.is_empty() || b.is_empty() {
        return Err(EstimatorError::Empty);
    }
    let mut d: f64 = 0.0;
    merged(a, b, |_, _, fa, fb| d = d.max((fa - fb).abs()));
    Ok(d)
}

/// Wasserstein-1 distance `∫ |F_a − F_b| dx`.
pub fn wasserstein1(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> Result<f64, EstimatorError> {
    if a.is_empty() || b.is_empty() {
        return Err(EstimatorError::Empty);
    }
    let mut w = 0.0;
    merged(a, b, |x, next, fa, fb| {
        if let Some(y) = next {
            w += (fa - fb).abs() * (y - x);
        }
    });
    Ok(w)
}

/// Weighted least-squares slope of `y` against `x`. `None` with fewer than
/// two usable points or a degenerate design.
pub fn weighted_loglog_slope(points: &[(f64, f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64, f64)> = points
        .iter()
        .filter(|(x, y, w)| *x > 0.0 && *y > 0.0 && *w > 0.0 && w.is_finite())
        .map(|&(x, y, w)| (x.ln(), y.ln(), w))
        .collect();
    weighted_slope(&pts)
}

pub(crate) fn weighted_slope(pts: &[(f64, f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let sw: f64 = pts.iter().map(|p| p.2).sum();
    let mx = pts.iter().map(|p| p.0 * p.2).sum::<f64>() / sw;
    let my = pts.iter().map(|p| p.1 * p.2).sum::<f64>() / sw;
    let sxx: f64 = pts.iter().map(|p| p.2 * (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| p.2 * (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 0.0 {
        return None;
    }
    Some(sxy / sxx)
}
