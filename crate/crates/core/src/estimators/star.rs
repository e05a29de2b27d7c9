use super::stats::{mean_estimate, EstimateResult, Method};
use super::{replicate_map, EstimatorError};
use crate::offspring::OffspringLaw;
use crate::rng::Seeds;
use crate::samplers::{sample_bgw, sample_height_capped, SamplerError};
use crate::trees::PlaneTree;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
#[derive(Default)]
pub struct StarParams {
    /// Heights are recorded as `min(Ht, h_cap)`; `None` uses `Δ`.
    pub h_cap: Option<usize>,
}


/// `Σ_{h>=1} min(N_h, N'_h)` with `N_h = #{i : heights[i] >= h}`.
fn matched_heights(a: &[usize], b: &[usize]) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    // Pairing the i-th tallest with the i-th tallest realises the sum.
    a.iter().zip(&b).map(|(x, y)| *x.min(y) as u64).sum()
}

/// The height-rearrangement bound for two trees, read off the fringe
/// subtrees hanging from each root.
pub fn star_bound_value(t: &PlaneTree, t2: &PlaneTree) -> u64 {
    let side = |t: &PlaneTree| {
        let h = t.subtree_heights();
        t.children(t.root()).map(|c| h[c]).collect::<Vec<_>>()
    };
    matched_heights(&side(t), &side(t2))
}

/// A root carrying `delta` independent Bienaymé subtrees.
pub fn sample_star_tree<R: Rng + ?Sized>(
    law: &OffspringLaw,
    delta: usize,
    rng: &mut R,
    cap: usize,
) -> Result<PlaneTree, SamplerError> {
    let mut kids = Vec::with_capacity(delta);
    let mut total = 1;
    for _ in 0..delta {
        let t = sample_bgw(law, rng, cap.saturating_sub(total).max(1))?;
        total += t.size();
        kids.push(t);
    }
    Ok(PlaneTree::graft(&kids))
}

/// Mean of the bound over replicates of two stars with `delta` branches
/// each. A replicate is censored when both stars have a branch reaching
/// the height cap, since only then can omitted levels contribute.
pub fn star_lower_bound(
    law: &OffspringLaw,
    delta: usize,
    samples: u64,
    seeds: Seeds,
    params: StarParams,
) -> Result<EstimateResult, EstimatorError> {
    if delta == 0 {
        return Err(EstimatorError::InvalidParameter("delta must be >= 1".into()));
    }
    if samples == 0 {
        return Ok(EstimateResult::degenerate(Method::Mean, seeds.master));
    }
    let cap = params.h_cap.unwrap_or(delta).max(1);
    let reps = replicate_map(seeds, samples, |_, rng| {
        let a: Vec<usize> = (0..delta).map(|_| sample_height_capped(law, rng, cap)).collect();
        let b: Vec<usize> = (0..delta).map(|_| sample_height_capped(law, rng, cap)).collect();
        let censored = a.contains(&cap) && b.contains(&cap);
        (matched_heights(&a, &b) as f64, censored)
    });
    let censored = reps.iter().filter(|r| r.1).count() as u64;
    let values: Vec<f64> = reps.iter().map(|r| r.0).collect();
    Ok(mean_estimate(&values, censored, seeds.master))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcs::lcs_unrooted;
    use crate::offspring::{make_standard_law, LawSpec};
    use crate::rng::StreamRng;

    #[test]
    fn counts_match_rearrangement() {
        let a = [3, 0, 1, 5];
        let b = [2, 2, 0, 0];
        let direct: u64 = (1..=5)
            .map(|h| {
                let na = a.iter().filter(|&&x| x >= h).count();
                let nb = b.iter().filter(|&&x| x >= h).count();
                na.min(nb) as u64
            })
            .sum();
        assert_eq!(matched_heights(&a, &b), direct);
    }

    #[test]
    fn trivial_laws() {
        let dead = LawSpec::Custom { pmf: vec![1.0] }.build().unwrap();
        let r = star_lower_bound(&dead, 7, 20, Seeds::new(1), StarParams::default()).unwrap();
        assert_eq!(r.point, 0.0);
        let l = make_standard_law(&LawSpec::GeometricHalf).unwrap();
        // Δ = 1 is min(Ht, Ht') of two trees.
        let one = star_lower_bound(&l, 1, 5000, Seeds::new(2), StarParams { h_cap: Some(10_000) }).unwrap();
        let tail = l.height_tail(10_000);
        let exact: f64 = tail[1..].iter().map(|p| p * p).sum();
        assert!((one.point - exact).abs() < 4.0 * (one.ci_high - one.point) / 1.96, "{one:?} {exact}");
    }

    #[test]
    fn bound_below_exact_lcs() {
        let l = make_standard_law(&LawSpec::GeometricHalf).unwrap();
        let mut rng = StreamRng::new(3, 0);
        for delta in [1, 2, 5, 12, 30] {
            for _ in 0..6 {
                let a = sample_star_tree(&l, delta, &mut rng, 400);
                let b = sample_star_tree(&l, delta, &mut rng, 400);
                let (Ok(a), Ok(b)) = (a, b) else {
                    continue;
                };
                let v = star_bound_value(&a, &b) as usize;
                assert!(v < lcs_unrooted(&a, &b).unwrap());
            }
        }
    }
}
