use super::{PlaneTree, TreeError};
use serde::{Deserialize, Serialize};

/// Step sequence of a plane tree: the out-degree of each vertex in DFS
/// preorder, minus one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LukasiewiczPath(Vec<i64>);

impl LukasiewiczPath {
    /// Validate a step sequence. Steps must be ≥ -1, partial sums must stay
    /// ≥ 0 before the last step and end at -1.
    pub fn new(steps: Vec<i64>) -> Result<Self, TreeError> {
        if steps.is_empty() {
            return Err(TreeError::InvalidPath("empty path".into()));
        }
        let mut walk = 0i64;
        for (i, &s) in steps.iter().enumerate() {
            if s < -1 {
                return Err(TreeError::InvalidPath(format!("step {i} equals {s} < -1")));
            }
            walk += s;
            let last = i + 1 == steps.len();
            if walk < 0 && !last {
                return Err(TreeError::InvalidPath(format!("partial sum negative at step {i}")));
            }
            if last && walk != -1 {
                return Err(TreeError::InvalidPath(format!("final partial sum {walk} != -1")));
            }
        }
        Ok(Self(steps))
    }

    pub fn steps(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums `Y_1, ..., Y_n`.
    pub fn walk(&self) -> Vec<i64> {
        self.0
            .iter()
            .scan(0i64, |acc, &s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    }
}

pub fn decode_lukasiewicz(path: &LukasiewiczPath) -> PlaneTree {
    let degrees: Vec<usize> = path.0.iter().map(|&s| (s + 1) as usize).collect();
    PlaneTree::from_preorder_degrees_unchecked(&degrees)
}

pub fn encode_lukasiewicz(tree: &PlaneTree) -> LukasiewiczPath {
    LukasiewiczPath((0..tree.size()).map(|u| tree.outdegree(u) as i64 - 1).collect())
}
