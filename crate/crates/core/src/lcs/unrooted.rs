use super::{LcsError, Witness, DEFAULT_PAIR_BUDGET};
use crate::assignment::AssignmentSolver;
use crate::trees::PlaneTree;

/// Oriented edges of a tree. For a non-root vertex `v` with parent `p`,
/// edge `2(v-1)` is `p → v` and `2(v-1)+1` is `v → p`; an edge `a → b`
/// stands for the component of `b` once `{a, b}` is removed, rooted at `b`.
struct Oriented {
    head: Vec<u32>,
    comp_size: Vec<u32>,
    // CSR: child edges of every edge, then the full neighbour edges of
    // every vertex (all edges leaving it).
    edge_off: Vec<u32>,
    edge_kids: Vec<u32>,
    vert_off: Vec<u32>,
    vert_kids: Vec<u32>,
}

impl Oriented {
    fn new(t: &PlaneTree) -> Self {
        let n = t.size();
        let e = 2 * n.saturating_sub(1);
        let down = |v: usize| (2 * (v - 1)) as u32;
        let up = |v: usize| (2 * (v - 1) + 1) as u32;
        // Edges leaving each vertex, in neighbour order (children, then parent).
        let out_edges = |v: usize| -> Vec<u32> {
            let mut out: Vec<u32> = t.children(v).map(down).collect();
            if v != 0 {
                out.push(up(v));
            }
            out
        };
        let mut head = vec![0u32; e];
        let mut comp_size = vec![0u32; e];
        for v in 1..n {
            let p = t.parent(v).unwrap();
            head[down(v) as usize] = v as u32;
            comp_size[down(v) as usize] = t.subtree_size(v) as u32;
            head[up(v) as usize] = p as u32;
            comp_size[up(v) as usize] = (n - t.subtree_size(v)) as u32;
        }
        let mut edge_off = Vec::with_capacity(e + 1);
        let mut edge_kids = Vec::new();
        for id in 0..e {
            edge_off.push(edge_kids.len() as u32);
            let v = id / 2 + 1;
            if id % 2 == 0 {
                edge_kids.extend(t.children(v).map(down));
            } else {
                let p = t.parent(v).unwrap();
                edge_kids.extend(t.children(p).filter(|&c| c != v).map(down));
                if p != 0 {
                    edge_kids.push(up(p));
                }
            }
        }
        edge_off.push(edge_kids.len() as u32);
        let mut vert_off = Vec::with_capacity(n + 1);
        let mut vert_kids = Vec::new();
        for v in 0..n {
            vert_off.push(vert_kids.len() as u32);
            vert_kids.extend(out_edges(v));
        }
        vert_off.push(vert_kids.len() as u32);
        Self { head, comp_size, edge_off, edge_kids, vert_off, vert_kids }
    }

    fn len(&self) -> usize {
        self.head.len()
    }

    fn kids(&self, e: usize) -> &[u32] {
        &self.edge_kids[self.edge_off[e] as usize..self.edge_off[e + 1] as usize]
    }

    fn vertex_edges(&self, v: usize) -> &[u32] {
        &self.vert_kids[self.vert_off[v] as usize..self.vert_off[v + 1] as usize]
    }

    fn order_by_size(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.len() as u32).collect();
        order.sort_by_key(|&e| self.comp_size[e as usize]);
        order
    }
}

pub fn lcs_unrooted(t: &PlaneTree, t2: &PlaneTree) -> Result<usize, LcsError> {
    lcs_unrooted_with_budget(t, t2, DEFAULT_PAIR_BUDGET)
}

/// LCS with an explicit cap on the number of oriented-edge pairs.
pub fn lcs_unrooted_with_budget(t: &PlaneTree, t2: &PlaneTree, budget: u64) -> Result<usize, LcsError> {
    Ok(UnrootedDp::run(t, t2, budget)?.best.0)
}

/// LCS together with one optimal embedding as vertex pairs.
pub fn lcs_unrooted_witness(t: &PlaneTree, t2: &PlaneTree) -> Result<(usize, Witness), LcsError> {
    let dp = UnrootedDp::run(t, t2, DEFAULT_PAIR_BUDGET)?;
    Ok((dp.best.0, dp.witness()))
}

struct UnrootedDp {
    a: Oriented,
    b: Oriented,
    memo: Vec<u32>,
    best: (usize, usize, usize),
}

impl UnrootedDp {
    fn run(t: &PlaneTree, t2: &PlaneTree, budget: u64) -> Result<Self, LcsError> {
        let a = Oriented::new(t);
        let b = Oriented::new(t2);
        let needed = a.len() as u64 * b.len() as u64 + t.size() as u64 * t2.size() as u64;
        if needed > budget {
            return Err(LcsError::ResourceLimit { needed, budget });
        }
        let (ea, eb) = (a.len(), b.len());
        let mut memo = vec![0u32; ea * eb];
        let mut solver = AssignmentSolver::default();
        let order_a = a.order_by_size();
        for &e in &order_a {
            let e = e as usize;
            let ka = a.kids(e);
            let row = e * eb;
            if ka.is_empty() {
                memo[row..row + eb].fill(1);
                continue;
            }
            for f in 0..eb {
                let kb = b.kids(f);
                let value = if kb.is_empty() {
                    1
                } else {
                    let m = &memo;
                    1 + solver.solve(ka.len(), kb.len(), |x, y| m[ka[x] as usize * eb + kb[y] as usize], None) as u32
                };
                memo[row + f] = value;
            }
        }
        let mut best = (1usize, 0usize, 0usize);
        for v in 0..t.size() {
            let ka = a.vertex_edges(v);
            for w in 0..t2.size() {
                let kb = b.vertex_edges(w);
                if ka.is_empty() || kb.is_empty() {
                    continue;
                }
                let value = 1 + solver.solve(ka.len(), kb.len(), |x, y| memo[ka[x] as usize * eb + kb[y] as usize], None) as usize;
                if value > best.0 {
                    best = (value, v, w);
                }
            }
        }
        Ok(Self { a, b, memo, best })
    }

    fn witness(&self) -> Witness {
        let eb = self.b.len();
        let (_, v, w) = self.best;
        let mut out = vec![(v, w)];
        let mut solver = AssignmentSolver::default();
        let mut pairs = Vec::new();
        let mut stack: Vec<(u32, u32)> = Vec::new();
        let memo = &self.memo;
        let push_children = |ka: &[u32], kb: &[u32], solver: &mut AssignmentSolver, pairs: &mut Vec<(usize, usize)>, stack: &mut Vec<(u32, u32)>| {
            solver.solve(ka.len(), kb.len(), |x, y| memo[ka[x] as usize * eb + kb[y] as usize], Some(pairs));
            for &(x, y) in pairs.iter() {
                stack.push((ka[x], kb[y]));
            }
        };
        push_children(self.a.vertex_edges(v), self.b.vertex_edges(w), &mut solver, &mut pairs, &mut stack);
        while let Some((e, f)) = stack.pop() {
            out.push((self.a.head[e as usize] as usize, self.b.head[f as usize] as usize));
            push_children(self.a.kids(e as usize), self.b.kids(f as usize), &mut solver, &mut pairs, &mut stack);
        }
        out.sort_unstable();
        out
    }
}
