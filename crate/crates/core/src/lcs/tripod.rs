use crate::trees::PlaneTree;
use serde::{Deserialize, Serialize};

/// Pareto-maximal sorted arm triples `a ≥ b ≥ c` of Y-shapes rooted at the
/// vertices of a tree, stored as integer arm lengths times a common scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripodFrontier {
    arms: Vec<[u32; 3]>,
    scale: f64,
}

impl TripodFrontier {
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Unscaled arm triples, sorted descending lexicographically.
    pub fn integer_triples(&self) -> &[[u32; 3]] {
        &self.arms
    }

    pub fn triples(&self) -> Vec<[f64; 3]> {
        self.arms
            .iter()
            .map(|t| t.map(|x| x as f64 * self.scale))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    /// Whether the sorted triple is ≤ some frontier triple (i.e. realizable
    /// as a Y at some vertex, arms measured in scaled units).
    pub fn admits(&self, arms: [f64; 3]) -> bool {
        let mut a = arms;
        a.sort_by(|x, y| y.total_cmp(x));
        self.triples()
            .iter()
            .any(|t| (0..3).all(|i| a[i] <= t[i] + 1e-12))
    }

    /// Same tree with every length multiplied by `lambda`.
    pub fn rescaled(&self, lambda: f64) -> Self {
        Self { arms: self.arms.clone(), scale: self.scale * lambda }
    }
}

pub fn tripod_frontier(t: &PlaneTree, scale: f64) -> TripodFrontier {
    assert!(scale > 0.0, "scale must be positive");
    let mut triples: Vec<[u32; 3]> = t
        .all_neighbor_component_depths()
        .into_iter()
        .map(|mut d| {
            d.sort_unstable_by(|a, b| b.cmp(a));
            let g = |i: usize| d.get(i).copied().unwrap_or(0) as u32;
            [g(0), g(1), g(2)]
        })
        .collect();
    triples.sort_unstable_by(|a, b| b.cmp(a));
    triples.dedup();
    // Lexicographically descending order: a triple can only be dominated by
    // one that precedes it.
    let mut arms: Vec<[u32; 3]> = Vec::new();
    for t in triples {
        if !arms.iter().any(|k| k[0] >= t[0] && k[1] >= t[1] && k[2] >= t[2]) {
            arms.push(t);
        }
    }
    TripodFrontier { arms, scale }
}

/// Longest common Y: maximum over frontier pairs of `Σ_i min(p_i, q_i)`.
pub fn lcs3_of_frontiers(f: &TripodFrontier, g: &TripodFrontier) -> f64 {
    let mut best = 0.0f64;
    for p in &f.arms {
        for q in &g.arms {
            let s: f64 = (0..3)
                .map(|i| (p[i] as f64 * f.scale).min(q[i] as f64 * g.scale))
                .sum();
            best = best.max(s);
        }
    }
    best
}

pub fn lcs3_length(t: &PlaneTree, t2: &PlaneTree, scale: f64, scale2: f64) -> f64 {
    lcs3_of_frontiers(&tripod_frontier(t, scale), &tripod_frontier(t2, scale2))
}
