use super::{replicate_fold, EstimatorError};
use crate::offspring::OffspringLaw;
use crate::rng::Seeds;
use crate::samplers::{sample_bgw_truncated, sample_spine_truncated, DEFAULT_CAP};
use serde::{Deserialize, Serialize};

/// Functional of the pair `(Cut_u τ, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FSpec {
    Const,
    /// `min(#Cut_u τ, s)`.
    CutSize { s: usize },
}

/// Functional of the fringe subtree `θ_u τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GSpec {
    Const,
    /// `min(Ht(θ_u τ), h)`.
    Height { h: usize },
}

impl FSpec {
    fn reach(&self) -> usize {
        match self {
            FSpec::Const => 0,
            FSpec::CutSize { s } => *s,
        }
    }
}

impl GSpec {
    fn reach(&self) -> usize {
        match self {
            GSpec::Const => 0,
            GSpec::Height { h } => *h,
        }
    }
}

/// The functional pairs exercised by the acceptance suite.
pub fn builtin_library() -> Vec<(FSpec, GSpec)> {
    let fs = [FSpec::Const, FSpec::CutSize { s: 6 }];
    let gs = [GSpec::Const, GSpec::Height { h: 5 }];
    fs.iter().flat_map(|f| gs.iter().map(move |g| (*f, *g))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManyToOne {
    pub n: usize,
    pub f: FSpec,
    pub g: GSpec,
    pub samples: u64,
    pub lhs: f64,
    pub lhs_stderr: f64,
    pub rhs: f64,
    pub rhs_stderr: f64,
    pub rel_error: f64,
}

#[derive(Default)]
struct Moments {
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
    }
    fn merge(mut self, o: Self) -> Self {
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
        self
    }
    fn mean_se(&self, n: u64) -> (f64, f64) {
        if n == 0 {
            return (f64::NAN, f64::NAN);
        }
        let nf = n as f64;
        let m = self.sum / nf;
        let var = if n > 1 { ((self.sum_sq - nf * m * m) / (nf - 1.0)).max(0.0) } else { 0.0 };
        (m, (var / nf).sqrt())
    }
}

/// Compares `E[Σ_{|u|=n} F(Cut_u τ) G(θ_u τ)]` with
/// `m^n E[F(Cut_{U_n} τ̂)] E[G(τ)]`, where `τ̂` is the size-biased tree.
///
/// Both functionals only look a bounded distance past level `n`, so
/// trees are grown to depth `n + max(s, h)`. `E[G(τ)]` is exact from the
/// height recursion; `E[F]` is Monte-Carlo over spine samples unless `F`
/// is constant.
pub fn many_to_one_check(
    law: &OffspringLaw,
    n: usize,
    f: FSpec,
    g: GSpec,
    samples: u64,
    seeds: Seeds,
) -> Result<ManyToOne, EstimatorError> {
    law.require_critical()?;
    let depth = n + f.reach().max(g.reach());
    let lhs = replicate_fold(
        seeds.lane(1),
        samples,
        Moments::default,
        |acc, _, rng| {
            let Ok(t) = sample_bgw_truncated(law, rng, depth, DEFAULT_CAP) else {
                return;
            };
            let tree = &t.tree;
            if tree.height() < n {
                acc.push(0.0);
                return;
            }
            let heights = matches!(g, GSpec::Height { .. }).then(|| tree.subtree_heights());
            let mut total = 0.0;
            for u in 0..tree.size() {
                if tree.depth(u) != n {
                    continue;
                }
                let fv = match f {
                    FSpec::Const => 1.0,
                    FSpec::CutSize { s } => (tree.size() - tree.subtree_size(u) + 1).min(s) as f64,
                };
                let gv = match (g, &heights) {
                    (GSpec::Height { h }, Some(hs)) => hs[u].min(h) as f64,
                    _ => 1.0,
                };
                total += fv * gv;
            }
            acc.push(total);
        },
        Moments::merge,
    );
    let (lhs, lhs_se) = lhs.mean_se(samples);

    let (ef, ef_se) = match f {
        FSpec::Const => (1.0, 0.0),
        FSpec::CutSize { s } => replicate_fold(
            seeds.lane(2),
            samples,
            Moments::default,
            |acc, _, rng| {
                let Ok(sp) = sample_spine_truncated(law, n, rng, n + s, DEFAULT_CAP) else {
                    return;
                };
                let top = sp.spine[n];
                acc.push((sp.tree.size() - sp.tree.subtree_size(top) + 1).min(s) as f64);
            },
            Moments::merge,
        )
        .mean_se(samples),
    };
    let eg = match g {
        GSpec::Const => 1.0,
        GSpec::Height { h } => law.height_tail(h)[1..].iter().sum(),
    };
    let mn = law.mean().powi(n as i32);
    let rhs = mn * ef * eg;
    let rhs_se = mn * ef_se * eg;
    Ok(ManyToOne {
        n,
        f,
        g,
        samples,
        lhs,
        lhs_stderr: lhs_se,
        rhs,
        rhs_stderr: rhs_se,
        rel_error: (lhs - rhs).abs() / rhs.abs().max(1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offspring::{make_standard_law, LawSpec};

    #[test]
    fn trivial_and_height_cases() {
        let l = make_standard_law(&LawSpec::BinaryHalf).unwrap();
        let r = many_to_one_check(&l, 1, FSpec::Const, GSpec::Const, 50_000, Seeds::new(1)).unwrap();
        assert_eq!(r.rhs, 1.0);
        assert!(r.rel_error < 4.0 * r.lhs_stderr + 1e-12, "{r:?}");
        let r = many_to_one_check(&l, 2, FSpec::Const, GSpec::Height { h: 5 }, 100_000, Seeds::new(2)).unwrap();
        // E[min(Ht, 5)] = Σ_{h=1..5} P(Ht ≥ h), recomputed from the pgf iteration.
        let mut q = 0.0f64;
        let mut eg = 0.0;
        for _ in 0..5 {
            q = 0.5 + 0.5 * q * q;
            eg += 1.0 - q;
        }
        assert!((r.rhs - eg).abs() < 1e-9);
        assert!((r.lhs - r.rhs).abs() < 4.0 * r.lhs_stderr, "{r:?}");
    }

    #[test]
    fn cut_size_sides_agree() {
        let l = make_standard_law(&LawSpec::GeometricHalf).unwrap();
        let r = many_to_one_check(&l, 2, FSpec::CutSize { s: 4 }, GSpec::Const, 100_000, Seeds::new(3)).unwrap();
        let se = (r.lhs_stderr.powi(2) + r.rhs_stderr.powi(2)).sqrt();
        assert!((r.lhs - r.rhs).abs() < 4.0 * se, "{r:?}");
        assert_eq!(builtin_library().len(), 4);
    }
}
