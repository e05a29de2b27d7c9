//! Exact samplers for Bienaymé, size-conditioned, root-biased and
//! size-biased (spine) trees.

use crate::offspring::{exact_size_law, LawError, LawSpec, OffspringLaw, EXACT_SIZE_MAX};
use crate::trees::{NodeId, PlaneTree};
use rand::Rng;
use rand_distr::{Binomial, Distribution, Gamma, Poisson};
use thiserror::Error;

/// Default node cap for unconditioned samplers.
pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("tree exceeded the cap of {0} nodes")]
    CapExceeded(usize),
    #[error("P(#τ = {0}) = 0 for this law")]
    UnsupportedSize(usize),
    #[error("rejection budget of {0} attempts exhausted")]
    Timeout(u64),
    #[error(transparent)]
    Law(#[from] LawError),
}

/// A tree grown only down to a maximum depth. `truncated` is set iff the
/// untruncated tree has a vertex deeper than that.
#[derive(Debug, Clone)]
pub struct Truncated {
    pub tree: PlaneTree,
    pub truncated: bool,
}

/// Size-biased tree cut off above the top spine vertex `U_H`, which carries
/// an ordinary Bienaymé subtree. `trims[i - 1]` is `Trim_{U_i}`.
#[derive(Debug, Clone)]
pub struct SpineTree {
    pub tree: PlaneTree,
    pub spine: Vec<NodeId>,
    pub trims: Vec<PlaneTree>,
    pub truncated: bool,
}

/// Grow in preorder from a root with `root_degree` children, drawing every
/// other vertex's out-degree from `law`. Vertices at depth `max_depth` are
/// kept as leaves. Appends to `degrees`.
fn grow_into<R: Rng + ?Sized>(
    degrees: &mut Vec<usize>,
    root_degree: usize,
    law: &OffspringLaw,
    rng: &mut R,
    max_depth: usize,
    cap: usize,
) -> Result<bool, SamplerError> {
    let mut truncated = false;
    let root = if max_depth == 0 {
        truncated = root_degree > 0;
        0
    } else {
        root_degree
    };
    let start = degrees.len();
    degrees.push(root);
    // (depth of the pending children, how many remain)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    if root > 0 {
        stack.push((1, root));
    }
    while let Some(top) = stack.last_mut() {
        if top.1 == 0 {
            stack.pop();
            continue;
        }
        top.1 -= 1;
        let depth = top.0;
        let mut k = law.sample(rng);
        if depth >= max_depth {
            truncated |= k > 0;
            k = 0;
        }
        degrees.push(k);
        if degrees.len() - start > cap {
            return Err(SamplerError::CapExceeded(cap));
        }
        if k > 0 {
            stack.push((depth + 1, k));
        }
    }
    Ok(truncated)
}

fn grow<R: Rng + ?Sized>(
    root_degree: usize,
    law: &OffspringLaw,
    rng: &mut R,
    max_depth: usize,
    cap: usize,
) -> Result<Truncated, SamplerError> {
    let mut degrees = Vec::new();
    let truncated = grow_into(&mut degrees, root_degree, law, rng, max_depth, cap)?;
    Ok(Truncated {
        tree: PlaneTree::from_preorder_degrees_unchecked(&degrees),
        truncated,
    })
}

/// A Bienaymé tree, or `CapExceeded` once it would exceed `cap` nodes.
pub fn sample_bgw<R: Rng + ?Sized>(law: &OffspringLaw, rng: &mut R, cap: usize) -> Result<PlaneTree, SamplerError> {
    let k = law.sample(rng);
    Ok(grow(k, law, rng, usize::MAX, cap.max(1))?.tree)
}

/// A Bienaymé tree restricted to depths `0..=max_depth`.
pub fn sample_bgw_truncated<R: Rng + ?Sized>(
    law: &OffspringLaw,
    rng: &mut R,
    max_depth: usize,
    cap: usize,
) -> Result<Truncated, SamplerError> {
    let k = law.sample(rng);
    grow(k, law, rng, max_depth, cap.max(1))
}

/// Root-biased tree: root degree `(k+1) μ(k+1)`, Bienaymé subtrees above.
pub fn sample_root_biased<R: Rng + ?Sized>(law: &OffspringLaw, rng: &mut R, cap: usize) -> Result<PlaneTree, SamplerError> {
    Ok(sample_root_biased_truncated(law, rng, usize::MAX, cap)?.tree)
}

pub fn sample_root_biased_truncated<R: Rng + ?Sized>(
    law: &OffspringLaw,
    rng: &mut R,
    max_depth: usize,
    cap: usize,
) -> Result<Truncated, SamplerError> {
    law.require_critical()?;
    let k = law.sample_root_biased(rng);
    grow(k, law, rng, max_depth, cap.max(1))
}

/// Whether `P(#τ = n) > 0`: `n ∈ 1 + gcd·ℕ`, checked exactly for small `n`.
pub fn size_is_supported(law: &OffspringLaw, n: usize) -> bool {
    if n == 0 || !(n - 1).is_multiple_of(law.support_gcd()) || law.prob(0) == 0.0 {
        return false;
    }
    if n <= EXACT_SIZE_MAX {
        return exact_size_law(law, n).map(|p| p[n - 1] > 0.0).unwrap_or(true);
    }
    true
}

/// Default number of attempts for the rejection step.
pub fn default_budget(law: &OffspringLaw, n: usize) -> u64 {
    50 * (n as f64).sqrt().ceil() as u64 * law.support_gcd() as u64
}

/// Exact draw from the law of τ given `#τ = n`.
pub fn sample_conditioned<R: Rng + ?Sized>(law: &OffspringLaw, n: usize, rng: &mut R) -> Result<PlaneTree, SamplerError> {
    sample_conditioned_with_budget(law, n, rng, default_budget(law, n))
}

/// As [`sample_conditioned`] with an explicit rejection budget. Draws `n`
/// i.i.d. offspring counts until they sum to `n - 1`, then applies the
/// cyclic shift that starts right after the first global minimum of the
/// walk, which is the unique rotation forming a Łukasiewicz path.
pub fn sample_conditioned_with_budget<R: Rng + ?Sized>(
    law: &OffspringLaw,
    n: usize,
    rng: &mut R,
    budget: u64,
) -> Result<PlaneTree, SamplerError> {
    if !size_is_supported(law, n) {
        return Err(SamplerError::UnsupportedSize(n));
    }
    let mut xs = vec![0usize; n];
    for _ in 0..budget.max(1) {
        let mut sum = 0usize;
        for x in xs.iter_mut() {
            *x = law.sample(rng);
            sum += *x;
        }
        if sum != n - 1 {
            continue;
        }
        let mut walk = 0i64;
        let (mut low, mut at) = (i64::MAX, 0usize);
        for (i, &x) in xs.iter().enumerate() {
            walk += x as i64 - 1;
            if walk < low {
                low = walk;
                at = i + 1;
            }
        }
        xs.rotate_left(at % n);
        debug_assert!(PlaneTree::from_preorder_degrees(&xs).is_ok());
        return Ok(PlaneTree::from_preorder_degrees_unchecked(&xs));
    }
    Err(SamplerError::Timeout(budget))
}

pub fn sample_spine<R: Rng + ?Sized>(law: &OffspringLaw, height: usize, rng: &mut R, cap: usize) -> Result<SpineTree, SamplerError> {
    sample_spine_truncated(law, height, rng, usize::MAX, cap)
}

/// Size-biased tree up to `U_height`, with every vertex deeper than
/// `max_depth` (≥ `height`) discarded.
pub fn sample_spine_truncated<R: Rng + ?Sized>(
    law: &OffspringLaw,
    height: usize,
    rng: &mut R,
    max_depth: usize,
    cap: usize,
) -> Result<SpineTree, SamplerError> {
    assert!(max_depth >= height, "depth cut must not fall below the spine");
    law.require_critical()?;
    let mut truncated = false;
    // Per spine level: degree, left sibling subtrees, right sibling subtrees.
    let mut levels: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::with_capacity(height);
    let mut total = 0usize;
    for i in 0..height {
        let k = law.sample_size_biased(rng);
        let j = rng.random_range(0..k);
        let mut left = Vec::new();
        let mut right = Vec::new();
        let sub_depth = max_depth.saturating_sub(i + 1);
        for c in 0..k {
            if c == j {
                continue;
            }
            let buf = if c < j { &mut left } else { &mut right };
            let root = law.sample(rng);
            truncated |= grow_into(buf, root, law, rng, sub_depth, cap)?;
        }
        total += 1 + left.len() + right.len();
        if total > cap {
            return Err(SamplerError::CapExceeded(cap));
        }
        levels.push((k, left, right));
    }
    let mut top = Vec::new();
    let root = law.sample(rng);
    truncated |= grow_into(&mut top, root, law, rng, max_depth - height, cap)?;
    if total + top.len() > cap {
        return Err(SamplerError::CapExceeded(cap));
    }

    let mut degrees = Vec::with_capacity(total + top.len());
    let mut spine = Vec::with_capacity(height + 1);
    for (k, left, _) in &levels {
        spine.push(degrees.len());
        degrees.push(*k);
        degrees.extend_from_slice(left);
    }
    spine.push(degrees.len());
    degrees.extend_from_slice(&top);
    for (_, _, right) in levels.iter().rev() {
        degrees.extend_from_slice(right);
    }
    let trims = levels
        .iter()
        .map(|(k, left, right)| {
            let mut d = Vec::with_capacity(1 + left.len() + right.len());
            d.push(k - 1);
            d.extend_from_slice(left);
            d.extend_from_slice(right);
            PlaneTree::from_preorder_degrees_unchecked(&d)
        })
        .collect();
    Ok(SpineTree {
        tree: PlaneTree::from_preorder_degrees_unchecked(&degrees),
        spine,
        trims,
        truncated,
    })
}

/// Sum of `z` independent offspring counts.
fn offspring_sum<R: Rng + ?Sized>(law: &OffspringLaw, z: u64, rng: &mut R) -> u64 {
    if z == 0 {
        return 0;
    }
    if z >= 16 {
        let zf = z as f64;
        match law.spec() {
            LawSpec::BinaryHalf => return 2 * Binomial::new(z, 0.5).unwrap().sample(rng),
            LawSpec::DAry { d } => return *d as u64 * Binomial::new(z, 1.0 / *d as f64).unwrap().sample(rng),
            LawSpec::PoissonOne => return Poisson::new(zf).unwrap().sample(rng) as u64,
            LawSpec::GeometricHalf => {
                // Σ of z Geometric(1/2) counts is negative binomial: a
                // Poisson with Gamma(z, 1) mean.
                let lambda: f64 = Gamma::new(zf, 1.0).unwrap().sample(rng);
                return if lambda > 0.0 { Poisson::new(lambda).unwrap().sample(rng) as u64 } else { 0 };
            }
            _ => {}
        }
    }
    (0..z).map(|_| law.sample(rng) as u64).sum()
}

/// `min(Ht(τ), h_cap)` from the generation sizes of a Bienaymé process.
pub fn sample_height_capped<R: Rng + ?Sized>(law: &OffspringLaw, rng: &mut R, h_cap: usize) -> usize {
    let mut z = 1u64;
    for h in 0..h_cap {
        z = offspring_sum(law, z, rng);
        if z == 0 {
            return h;
        }
    }
    h_cap
}

/// Generation sizes `Z_0..=Z_depth` (trailing zeros dropped).
pub fn sample_generation_sizes<R: Rng + ?Sized>(law: &OffspringLaw, rng: &mut R, depth: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    for _ in 0..depth {
        let z = offspring_sum(law, *out.last().unwrap(), rng);
        if z == 0 {
            break;
        }
        out.push(z);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offspring::make_standard_law;
    use crate::rng::StreamRng;
    use crate::trees::serialize;

    fn law(spec: LawSpec) -> OffspringLaw {
        make_standard_law(&spec).unwrap()
    }

    #[test]
    fn degenerate_law_gives_single_vertex() {
        let dead = make_standard_law(&LawSpec::Custom { pmf: vec![1.0] }).unwrap();
        let mut rng = StreamRng::new(1, 0);
        for _ in 0..10 {
            assert_eq!(sample_bgw(&dead, &mut rng, 10).unwrap().size(), 1);
        }
    }

    #[test]
    fn cap_is_reported() {
        let geo = law(LawSpec::GeometricHalf);
        let mut rng = StreamRng::new(2, 0);
        let mut capped = 0;
        for _ in 0..2000 {
            match sample_bgw(&geo, &mut rng, 5) {
                Ok(t) => assert!(t.size() <= 5),
                Err(SamplerError::CapExceeded(5)) => capped += 1,
                Err(e) => panic!("{e}"),
            }
        }
        assert!(capped > 0);
    }

    #[test]
    fn conditioned_small_cases() {
        let bin = law(LawSpec::BinaryHalf);
        let mut rng = StreamRng::new(3, 0);
        assert_eq!(sample_conditioned(&bin, 1, &mut rng).unwrap().size(), 1);
        assert_eq!(sample_conditioned(&bin, 2, &mut rng), Err(SamplerError::UnsupportedSize(2)));
        for _ in 0..50 {
            assert_eq!(serialize(&sample_conditioned(&bin, 3, &mut rng).unwrap()), "(()())");
        }
        let geo = law(LawSpec::GeometricHalf);
        for n in [1, 2, 10, 64, 300] {
            assert_eq!(sample_conditioned(&geo, n, &mut rng).unwrap().size(), n);
        }
        assert!(matches!(
            sample_conditioned_with_budget(&geo, 10_000, &mut rng, 1),
            Err(SamplerError::Timeout(1)) | Ok(_)
        ));
    }

    #[test]
    fn root_biased_degrees() {
        let bin = law(LawSpec::BinaryHalf);
        let mut rng = StreamRng::new(4, 0);
        for _ in 0..100 {
            assert_eq!(sample_root_biased(&bin, &mut rng, DEFAULT_CAP).unwrap().outdegree(0), 1);
        }
    }

    #[test]
    fn spine_structure() {
        let bin = law(LawSpec::BinaryHalf);
        let mut rng = StreamRng::new(5, 0);
        for _ in 0..50 {
            let s = sample_spine(&bin, 1, &mut rng, DEFAULT_CAP).unwrap();
            assert_eq!(s.tree.outdegree(0), 2);
        }
        let geo = law(LawSpec::GeometricHalf);
        for _ in 0..50 {
            let s = sample_spine(&geo, 6, &mut rng, DEFAULT_CAP).unwrap();
            assert_eq!(s.spine.len(), 7);
            assert_eq!(s.trims.len(), 6);
            for (i, &u) in s.spine.iter().enumerate() {
                assert_eq!(s.tree.depth(u), i);
                if i > 0 {
                    assert_eq!(s.tree.parent(u), Some(s.spine[i - 1]));
                    let trim = s.tree.trim_at(u).unwrap();
                    assert_eq!(trim, s.trims[i - 1]);
                }
            }
        }
        let s0 = sample_spine(&geo, 0, &mut rng, DEFAULT_CAP).unwrap();
        assert_eq!(s0.spine, vec![0]);
        assert!(s0.trims.is_empty());
    }

    #[test]
    fn truncation_flags_deep_trees() {
        let geo = law(LawSpec::GeometricHalf);
        let (mut a, mut b) = (StreamRng::new(6, 1), StreamRng::new(6, 1));
        for _ in 0..50 {
            let full = sample_bgw(&geo, &mut a, DEFAULT_CAP).unwrap();
            let same = sample_bgw_truncated(&geo, &mut b, usize::MAX, DEFAULT_CAP).unwrap();
            assert_eq!(full, same.tree);
            assert!(!same.truncated);
        }
        let n = 20_000;
        let mut flagged = 0;
        for _ in 0..n {
            let cut = sample_bgw_truncated(&geo, &mut a, 3, DEFAULT_CAP).unwrap();
            assert!(cut.tree.height() <= 3);
            flagged += cut.truncated as usize;
        }
        // P(Ht > 3) = P(Ht ≥ 4) = 1/5 for this law.
        let p = flagged as f64 / n as f64;
        assert!((p - 0.2).abs() < 4.0 * (0.2f64 * 0.8 / n as f64).sqrt(), "p = {p}");
    }

    #[test]
    fn capped_height_is_bounded() {
        let mut rng = StreamRng::new(7, 0);
        for spec in [LawSpec::BinaryHalf, LawSpec::GeometricHalf, LawSpec::PoissonOne] {
            let l = law(spec);
            for _ in 0..200 {
                assert!(sample_height_capped(&l, &mut rng, 20) <= 20);
            }
        }
    }
}
