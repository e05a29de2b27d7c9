//! Immutable rooted plane trees stored as arenas in DFS preorder.
//!
//! Node ids are dense `usize` indices in preorder, so the subtree above `u`
//! is the id range `u..u + subtree_size(u)`. Every structural operator
//! returns a fresh tree; nothing is mutated after construction.

mod canonical;
mod enumerate;
mod lukasiewicz;
mod text;

pub use canonical::{canonical_rooted, canonical_unrooted};
pub use enumerate::{catalan, enumerate_plane_trees};
pub use lukasiewicz::{decode_lukasiewicz, encode_lukasiewicz, LukasiewiczPath};
pub use text::{parse, serialize, ParentsJson};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = usize;

const NO_PARENT: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("node {0} not in tree")]
    NodeNotFound(NodeId),
    #[error("the root has no trim")]
    RootHasNoTrim,
    #[error("invalid Łukasiewicz path: {0}")]
    InvalidPath(String),
    #[error("parse error at byte {offset}: {message}")]
    ParseError { offset: usize, message: String },
    #[error("invalid parent array: {0}")]
    InvalidParents(String),
}

/// A finite rooted plane tree.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneTree {
    parent: Vec<usize>,
    child_offsets: Vec<u32>,
    children: Vec<u32>,
    subtree_size: Vec<u32>,
    depth: Vec<u32>,
    height: usize,
    max_outdegree: usize,
}

impl std::fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PlaneTree({})", serialize(self))
    }
}

impl PlaneTree {
    /// The tree with a single vertex.
    pub fn singleton() -> Self {
        Self::from_preorder_degrees_unchecked(&[0])
    }

    /// Build from out-degrees listed in DFS preorder. Fails unless the
    /// sequence is a valid Łukasiewicz word (steps `degree - 1`).
    pub fn from_preorder_degrees(degrees: &[usize]) -> Result<Self, TreeError> {
        if degrees.is_empty() {
            return Err(TreeError::InvalidPath("empty sequence".into()));
        }
        let mut open: i64 = 1;
        for (i, &d) in degrees.iter().enumerate() {
            open += d as i64 - 1;
            if open == 0 && i + 1 != degrees.len() {
                return Err(TreeError::InvalidPath(format!(
                    "walk reaches -1 at step {} of {}",
                    i + 1,
                    degrees.len()
                )));
            }
        }
        if open != 0 {
            return Err(TreeError::InvalidPath(format!(
                "final partial sum is {} instead of -1",
                open - 1
            )));
        }
        Ok(Self::from_preorder_degrees_unchecked(degrees))
    }

    /// Same as [`from_preorder_degrees`](Self::from_preorder_degrees) for
    /// sequences already known to be valid.
    pub(crate) fn from_preorder_degrees_unchecked(degrees: &[usize]) -> Self {
        let n = degrees.len();
        let mut parent = vec![NO_PARENT; n];
        let mut depth = vec![0u32; n];
        let mut child_offsets = Vec::with_capacity(n + 1);
        let mut acc = 0u32;
        for &d in degrees {
            child_offsets.push(acc);
            acc += d as u32;
        }
        child_offsets.push(acc);
        let mut children = vec![0u32; acc as usize];
        let mut fill = vec![0u32; n];

        // Stack of vertices still waiting for children.
        let mut stack: Vec<usize> = Vec::new();
        for v in 0..n {
            if let Some(&p) = stack.last() {
                parent[v] = p;
                depth[v] = depth[p] + 1;
                let slot = child_offsets[p] + fill[p];
                children[slot as usize] = v as u32;
                fill[p] += 1;
                if fill[p] as usize == degrees[p] {
                    stack.pop();
                }
            }
            if degrees[v] > 0 {
                stack.push(v);
            }
        }

        let mut subtree_size = vec![1u32; n];
        for v in (1..n).rev() {
            subtree_size[parent[v]] += subtree_size[v];
        }
        let height = depth.iter().copied().max().unwrap_or(0) as usize;
        let max_outdegree = degrees.iter().copied().max().unwrap_or(0);
        Self {
            parent,
            child_offsets,
            children,
            subtree_size,
            depth,
            height,
            max_outdegree,
        }
    }

    /// Build by walking an undirected adjacency structure from `root`; each
    /// vertex's children are its neighbours other than where it was entered
    /// from, in the order `neighbors` yields them.
    fn from_walk<F, I>(root: NodeId, n: usize, neighbors: F) -> (Self, Vec<NodeId>)
    where
        F: Fn(NodeId) -> I,
        I: Iterator<Item = NodeId>,
    {
        let mut degrees = Vec::with_capacity(n);
        let mut order = Vec::with_capacity(n);
        // (vertex, came_from)
        let mut stack = vec![(root, NO_PARENT)];
        while let Some((v, from)) = stack.pop() {
            order.push(v);
            let next: Vec<NodeId> = neighbors(v).filter(|&w| w != from).collect();
            degrees.push(next.len());
            for &w in next.iter().rev() {
                stack.push((w, v));
            }
        }
        (Self::from_preorder_degrees_unchecked(&degrees), order)
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Maximum out-degree Δ(t).
    pub fn max_outdegree(&self) -> usize {
        self.max_outdegree
    }

    pub fn contains(&self, u: NodeId) -> bool {
        u < self.size()
    }

    fn check(&self, u: NodeId) -> Result<(), TreeError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(TreeError::NodeNotFound(u))
        }
    }

    pub fn parent(&self, u: NodeId) -> Option<NodeId> {
        match self.parent[u] {
            NO_PARENT => None,
            p => Some(p),
        }
    }

    pub fn children(&self, u: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        let lo = self.child_offsets[u] as usize;
        let hi = self.child_offsets[u + 1] as usize;
        self.children[lo..hi].iter().map(|&c| c as usize)
    }

    pub(crate) fn children_slice(&self, u: NodeId) -> &[u32] {
        let lo = self.child_offsets[u] as usize;
        let hi = self.child_offsets[u + 1] as usize;
        &self.children[lo..hi]
    }

    /// Out-degree `k_u(t)`.
    pub fn outdegree(&self, u: NodeId) -> usize {
        (self.child_offsets[u + 1] - self.child_offsets[u]) as usize
    }

    /// Graph degree (children plus parent).
    pub fn degree(&self, u: NodeId) -> usize {
        self.outdegree(u) + usize::from(u != 0)
    }

    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.children(u).chain(self.parent(u))
    }

    /// Generation `|u|`.
    pub fn depth(&self, u: NodeId) -> usize {
        self.depth[u] as usize
    }

    pub fn subtree_size(&self, u: NodeId) -> usize {
        self.subtree_size[u] as usize
    }

    /// Out-degrees in preorder.
    pub fn preorder_degrees(&self) -> Vec<usize> {
        (0..self.size()).map(|u| self.outdegree(u)).collect()
    }

    /// Number of vertices at each depth `0..=height`.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.height + 1];
        for &d in &self.depth {
            out[d as usize] += 1;
        }
        out
    }

    /// Height of `θ_u t` for every `u`.
    pub fn subtree_heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.size()];
        for v in (1..self.size()).rev() {
            let p = self.parent[v];
            h[p] = h[p].max(h[v] + 1);
        }
        h
    }

    /// `θ_u t`, the subtree above `u`.
    pub fn subtree_at(&self, u: NodeId) -> Result<PlaneTree, TreeError> {
        self.check(u)?;
        let range = u..u + self.subtree_size(u);
        let degrees: Vec<usize> = range.map(|v| self.outdegree(v)).collect();
        Ok(Self::from_preorder_degrees_unchecked(&degrees))
    }

    /// `Cut_u t`: `t` with every strict descendant of `u` removed.
    pub fn cut_at(&self, u: NodeId) -> Result<PlaneTree, TreeError> {
        self.check(u)?;
        let skip = u + 1..u + self.subtree_size(u);
        let degrees: Vec<usize> = (0..self.size())
            .filter(|v| !skip.contains(v))
            .map(|v| if v == u { 0 } else { self.outdegree(v) })
            .collect();
        Ok(Self::from_preorder_degrees_unchecked(&degrees))
    }

    /// `Trim_u t`: the subtree above `u`'s parent with `θ_u t` removed.
    pub fn trim_at(&self, u: NodeId) -> Result<PlaneTree, TreeError> {
        self.check(u)?;
        let p = self.parent(u).ok_or(TreeError::RootHasNoTrim)?;
        let skip = u..u + self.subtree_size(u);
        let degrees: Vec<usize> = (p..p + self.subtree_size(p))
            .filter(|v| !skip.contains(v))
            .map(|v| if v == p { self.outdegree(p) - 1 } else { self.outdegree(v) })
            .collect();
        Ok(Self::from_preorder_degrees_unchecked(&degrees))
    }

    /// Re-root at `v`. Former children keep their plane order and the former
    /// parent becomes the last child.
    pub fn reroot(&self, v: NodeId) -> Result<PlaneTree, TreeError> {
        Ok(self.reroot_with_map(v)?.0)
    }

    /// Re-root at `v`, also returning `old_id` for every new id.
    pub fn reroot_with_map(&self, v: NodeId) -> Result<(PlaneTree, Vec<NodeId>), TreeError> {
        self.check(v)?;
        Ok(Self::from_walk(v, self.size(), |u| self.neighbors(u)))
    }

    /// For every vertex, `1 +` the height of each neighbour component
    /// (unsorted: children first in plane order, then the parent side).
    pub fn all_neighbor_component_depths(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let down = self.subtree_heights();
        // up[v]: depth of the component containing v's parent, seen from v.
        let mut up = vec![0usize; n];
        for p in 0..n {
            let (mut best, mut second) = (0usize, 0usize);
            for c in self.children(p) {
                let d = down[c] + 1;
                if d > best {
                    second = best;
                    best = d;
                } else if d > second {
                    second = d;
                }
            }
            // Longest walk from p that does not enter child c.
            let from_above = if p == 0 { 0 } else { up[p] };
            for c in self.children(p) {
                let sib = if down[c] + 1 == best { second } else { best };
                up[c] = 1 + from_above.max(sib);
            }
        }
        (0..n)
            .map(|v| {
                let mut d: Vec<usize> = self.children(v).map(|c| down[c] + 1).collect();
                if v != 0 {
                    d.push(up[v]);
                }
                d
            })
            .collect()
    }

    /// Arm capacities at `v`, sorted descending: one entry per neighbour
    /// component of `v`, equal to the furthest distance from `v` into it.
    pub fn neighbor_component_depths(&self, v: NodeId) -> Result<Vec<usize>, TreeError> {
        self.check(v)?;
        // Single-vertex version: BFS distances restricted by first edge.
        let dist = self.distances_from(v);
        let mut best: Vec<(NodeId, usize)> = self.neighbors(v).map(|w| (w, 0)).collect();
        // Label every vertex by the neighbour of v it is reached through.
        let mut via = vec![NO_PARENT; self.size()];
        let mut stack = Vec::new();
        for (i, &(w, _)) in best.iter().enumerate() {
            via[w] = i;
            stack.push(w);
        }
        via[v] = usize::MAX - 1;
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if via[w] == NO_PARENT {
                    via[w] = via[u];
                    stack.push(w);
                }
            }
        }
        for u in 0..self.size() {
            if u != v {
                let slot = &mut best[via[u]].1;
                *slot = (*slot).max(dist[u]);
            }
        }
        let mut out: Vec<usize> = best.into_iter().map(|(_, d)| d).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    /// Graph distances from `v` to every vertex.
    pub fn distances_from(&self, v: NodeId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.size()];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distance matrix, row-major.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.size()).map(|v| self.distances_from(v)).collect()
    }

    /// Number of edges on a longest path.
    pub fn diameter(&self) -> usize {
        self.all_neighbor_component_depths()
            .into_iter()
            .map(|mut d| {
                d.sort_unstable_by(|a, b| b.cmp(a));
                d.first().copied().unwrap_or(0) + d.get(1).copied().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Vertex achieving the maximum out-degree (first in preorder).
    pub fn max_outdegree_vertex(&self) -> NodeId {
        (0..self.size())
            .max_by_key(|&u| (self.outdegree(u), std::cmp::Reverse(u)))
            .unwrap_or(0)
    }

    /// Parent index per node, `-1` for the root.
    pub fn parents(&self) -> Vec<i64> {
        self.parent
            .iter()
            .map(|&p| if p == NO_PARENT { -1 } else { p as i64 })
            .collect()
    }

    /// Build from a parent array with `-1` marking the root. Children are
    /// ordered by increasing index; node ids are renumbered to preorder.
    pub fn from_parents(parents: &[i64]) -> Result<PlaneTree, TreeError> {
        let n = parents.len();
        if n == 0 {
            return Err(TreeError::InvalidParents("empty".into()));
        }
        let mut kids: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut root = None;
        for (v, &p) in parents.iter().enumerate() {
            if p == -1 {
                if root.replace(v).is_some() {
                    return Err(TreeError::InvalidParents("more than one root".into()));
                }
            } else if p < 0 || p as usize >= n || p as usize == v {
                return Err(TreeError::InvalidParents(format!("bad parent {p} for node {v}")));
            } else {
                kids[p as usize].push(v);
            }
        }
        let root = root.ok_or_else(|| TreeError::InvalidParents("no root".into()))?;
        let mut degrees = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            degrees.push(kids[v].len());
            if degrees.len() > n {
                break;
            }
            stack.extend(kids[v].iter().rev());
        }
        if degrees.len() != n {
            return Err(TreeError::InvalidParents("parent array has a cycle".into()));
        }
        Ok(Self::from_preorder_degrees_unchecked(&degrees))
    }

    /// Path with `n` vertices rooted at one end.
    pub fn chain(n: usize) -> Self {
        let mut d = vec![1; n.max(1)];
        *d.last_mut().unwrap() = 0;
        Self::from_preorder_degrees_unchecked(&d)
    }

    /// Root with `k` leaf children.
    pub fn star(k: usize) -> Self {
        let mut d = vec![0; k + 1];
        d[0] = k;
        Self::from_preorder_degrees_unchecked(&d)
    }

    /// Root whose children carry the given trees, in order.
    pub fn graft(children: &[PlaneTree]) -> Self {
        let mut d = vec![children.len()];
        for c in children {
            d.extend(c.preorder_degrees());
        }
        Self::from_preorder_degrees_unchecked(&d)
    }

    /// Spider: a centre with legs of the given lengths (rooted at the centre).
    pub fn spider(legs: &[usize]) -> Self {
        let legs: Vec<PlaneTree> = legs.iter().filter(|&&l| l > 0).map(|&l| Self::chain(l)).collect();
        Self::graft(&legs)
    }
}

/// A directed edge `(from, to)`; denotes the component of `to` after removing
/// the edge, rooted at `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedSubtree {
    pub from: NodeId,
    pub to: NodeId,
}

impl OrientedSubtree {
    pub fn new(tree: &PlaneTree, from: NodeId, to: NodeId) -> Result<Self, TreeError> {
        tree.check(from)?;
        tree.check(to)?;
        if tree.parent(to) == Some(from) || tree.parent(from) == Some(to) {
            Ok(Self { from, to })
        } else {
            Err(TreeError::NodeNotFound(to))
        }
    }

    /// Number of vertices in the component.
    pub fn size(&self, tree: &PlaneTree) -> usize {
        if tree.parent(self.to) == Some(self.from) {
            tree.subtree_size(self.to)
        } else {
            tree.size() - tree.subtree_size(self.from)
        }
    }

    /// The component as a rooted plane tree.
    pub fn materialize(&self, tree: &PlaneTree) -> PlaneTree {
        let from = self.from;
        PlaneTree::from_walk(self.to, self.size(tree), |u| {
            tree.neighbors(u).filter(move |&w| !(u == self.to && w == from))
        })
        .0
    }
}
