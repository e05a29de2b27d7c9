use super::{LcsError, Witness, DEFAULT_PAIR_BUDGET};
use crate::assignment::AssignmentSolver;
use crate::trees::PlaneTree;

/// Vertices grouped by depth, each level in preorder, with the range of
/// every vertex's children inside the next level.
pub(super) struct Levels {
    pub nodes: Vec<Vec<u32>>,
    pub child_lo: Vec<u32>,
    pub child_hi: Vec<u32>,
}

impl Levels {
    pub fn new(t: &PlaneTree, max_depth: usize) -> Self {
        let h = t.height().min(max_depth);
        let mut nodes: Vec<Vec<u32>> = vec![Vec::new(); h + 1];
        let mut index = vec![0u32; t.size()];
        for u in 0..t.size() {
            let d = t.depth(u);
            if d <= h {
                index[u] = nodes[d].len() as u32;
                nodes[d].push(u as u32);
            }
        }
        let mut child_lo = vec![0u32; t.size()];
        let mut child_hi = vec![0u32; t.size()];
        for u in 0..t.size() {
            if t.depth(u) < h {
                let kids = t.children_slice(u);
                if let (Some(&a), Some(&b)) = (kids.first(), kids.last()) {
                    child_lo[u] = index[a as usize];
                    child_hi[u] = index[b as usize] + 1;
                }
            }
        }
        Self { nodes, child_lo, child_hi }
    }
}

/// `Σ_d min(Z_d, Z'_d)`, an upper bound on LCS• (a common rooted subtree
/// has at most that many vertices at each depth).
pub fn rooted_upper_bound(t: &PlaneTree, t2: &PlaneTree) -> usize {
    let a = t.level_sizes();
    let b = t2.level_sizes();
    a.iter().zip(&b).map(|(x, y)| *x.min(y)).sum()
}

pub fn lcs_rooted(t: &PlaneTree, t2: &PlaneTree) -> Result<usize, LcsError> {
    lcs_rooted_with_budget(t, t2, DEFAULT_PAIR_BUDGET)
}

/// LCS• with an explicit cap on the number of same-depth vertex pairs.
pub fn lcs_rooted_with_budget(t: &PlaneTree, t2: &PlaneTree, budget: u64) -> Result<usize, LcsError> {
    Ok(RootedDp::run(t, t2, budget, false)?.value)
}

/// LCS• together with one optimal embedding.
pub fn lcs_rooted_witness(t: &PlaneTree, t2: &PlaneTree) -> Result<(usize, Witness), LcsError> {
    let dp = RootedDp::run(t, t2, DEFAULT_PAIR_BUDGET, true)?;
    let witness = dp.witness();
    Ok((dp.value, witness))
}

struct RootedDp {
    a: Levels,
    b: Levels,
    tables: Vec<Vec<u32>>,
    value: usize,
}

impl RootedDp {
    fn run(t: &PlaneTree, t2: &PlaneTree, budget: u64, keep: bool) -> Result<Self, LcsError> {
        let h = t.height().min(t2.height());
        let a = Levels::new(t, h);
        let b = Levels::new(t2, h);
        let needed: u64 = (0..=h)
            .map(|d| a.nodes[d].len() as u64 * b.nodes[d].len() as u64)
            .sum();
        if needed > budget {
            return Err(LcsError::ResourceLimit { needed, budget });
        }
        let mut solver = AssignmentSolver::default();
        let mut tables: Vec<Vec<u32>> = vec![Vec::new(); h + 1];
        for d in (0..=h).rev() {
            let (la, lb) = (&a.nodes[d], &b.nodes[d]);
            let mut cur = vec![1u32; la.len() * lb.len()];
            if d < h {
                let below = &tables[d + 1];
                let stride = b.nodes[d + 1].len();
                for (i, &u) in la.iter().enumerate() {
                    let (alo, ahi) = (a.child_lo[u as usize] as usize, a.child_hi[u as usize] as usize);
                    if alo == ahi {
                        continue;
                    }
                    for (j, &v) in lb.iter().enumerate() {
                        let (blo, bhi) = (b.child_lo[v as usize] as usize, b.child_hi[v as usize] as usize);
                        if blo == bhi {
                            continue;
                        }
                        let m = solver.solve(
                            ahi - alo,
                            bhi - blo,
                            |x, y| below[(alo + x) * stride + blo + y],
                            None,
                        );
                        cur[i * lb.len() + j] = 1 + m as u32;
                    }
                }
                if !keep {
                    tables[d + 1] = Vec::new();
                }
            }
            tables[d] = cur;
        }
        let value = tables[0][0] as usize;
        Ok(Self { a, b, tables, value })
    }

    fn witness(&self) -> Witness {
        let mut out = vec![(0usize, 0usize)];
        let mut stack = vec![(0usize, 0usize, 0usize)]; // (depth, level index in a, in b)
        let mut solver = AssignmentSolver::default();
        let mut pairs = Vec::new();
        while let Some((d, i, j)) = stack.pop() {
            if d + 1 >= self.tables.len() {
                continue;
            }
            let u = self.a.nodes[d][i] as usize;
            let v = self.b.nodes[d][j] as usize;
            let (alo, ahi) = (self.a.child_lo[u] as usize, self.a.child_hi[u] as usize);
            let (blo, bhi) = (self.b.child_lo[v] as usize, self.b.child_hi[v] as usize);
            let below = &self.tables[d + 1];
            let stride = self.b.nodes[d + 1].len();
            solver.solve(ahi - alo, bhi - blo, |x, y| below[(alo + x) * stride + blo + y], Some(&mut pairs));
            for &(x, y) in &pairs {
                let (ci, cj) = (alo + x, blo + y);
                out.push((self.a.nodes[d + 1][ci] as usize, self.b.nodes[d + 1][cj] as usize));
                stack.push((d + 1, ci, cj));
            }
        }
        out.sort_unstable();
        out
    }
}
