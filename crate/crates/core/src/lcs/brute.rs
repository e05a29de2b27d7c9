use super::LcsError;
use crate::trees::{canonical_rooted, canonical_unrooted, PlaneTree};
use std::collections::HashMap;

/// Oracle precondition: `#t · #t'` may not exceed this.
pub const BRUTE_FORCE_PAIR_LIMIT: usize = 100;

fn check(t: &PlaneTree, t2: &PlaneTree) -> Result<(), LcsError> {
    if t.size() * t2.size() > BRUTE_FORCE_PAIR_LIMIT {
        return Err(LcsError::TooLarge(format!(
            "{} x {} vertices exceeds {BRUTE_FORCE_PAIR_LIMIT}",
            t.size(),
            t2.size()
        )));
    }
    Ok(())
}

/// Calls `visit` once for every connected vertex set of at most `k`
/// vertices (as a bitmask); with `through_root` only sets containing vertex 0.
fn connected_subsets(t: &PlaneTree, k: usize, through_root: bool, visit: &mut dyn FnMut(u128)) {
    let n = t.size();
    assert!(n <= 128, "bitmask enumeration needs at most 128 vertices");
    let nbr: Vec<u128> = (0..n)
        .map(|u| t.neighbors(u).fold(0u128, |m, w| m | 1 << w))
        .collect();
    // Extension-set enumeration of the sets whose least vertex is the start;
    // `closed` is the closed neighbourhood of `sub`.
    fn extend(nbr: &[u128], above: u128, sub: u128, closed: u128, ext: u128, left: usize, visit: &mut dyn FnMut(u128)) {
        visit(sub);
        if left == 0 {
            return;
        }
        let mut ext = ext;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let fresh = nbr[w] & !closed & above;
            extend(nbr, above, sub | 1 << w, closed | nbr[w], ext | fresh, left - 1, visit);
        }
    }
    let starts = if through_root { 1 } else { n };
    for v in 0..starts {
        let above = if v + 1 >= 128 { 0 } else { u128::MAX << (v + 1) };
        let sub = 1u128 << v;
        extend(&nbr, above, sub, nbr[v] | sub, nbr[v] & above, k.saturating_sub(1), visit);
    }
}

/// Tree induced on a connected vertex set, rooted at `root`.
fn induced(t: &PlaneTree, set: u128, root: usize) -> PlaneTree {
    let mut label = HashMap::new();
    let mut parents = Vec::new();
    let mut stack = vec![(root, -1i64)];
    while let Some((u, p)) = stack.pop() {
        label.insert(u, parents.len() as i64);
        parents.push(p);
        let me = label[&u];
        for w in t.neighbors(u) {
            if set >> w & 1 == 1 && !label.contains_key(&w) {
                stack.push((w, me));
            }
        }
    }
    PlaneTree::from_parents(&parents).expect("connected set induces a tree")
}

/// Isomorphism classes of subtrees containing the root with ≤ k vertices,
/// mapped to their sizes.
pub fn rooted_subtree_forms(t: &PlaneTree, k: usize) -> HashMap<String, usize> {
    let mut forms = HashMap::new();
    connected_subsets(t, k, true, &mut |set| {
        let sub = induced(t, set, 0);
        forms.insert(canonical_rooted(&sub), sub.size());
    });
    forms
}

/// Isomorphism classes of subtrees with ≤ k vertices, mapped to their sizes.
pub fn unrooted_subtree_forms(t: &PlaneTree, k: usize) -> HashMap<String, usize> {
    let mut forms = HashMap::new();
    connected_subsets(t, k, false, &mut |set| {
        let root = set.trailing_zeros() as usize;
        let sub = induced(t, set, root);
        forms.insert(canonical_unrooted(&sub), sub.size());
    });
    forms
}

fn best_common(a: &HashMap<String, usize>, b: &HashMap<String, usize>) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter(|(k, _)| large.contains_key(*k))
        .map(|(_, &s)| s)
        .max()
        .unwrap_or(0)
}

pub fn lcs_rooted_bruteforce(t: &PlaneTree, t2: &PlaneTree) -> Result<usize, LcsError> {
    check(t, t2)?;
    let k = t.size().min(t2.size());
    Ok(best_common(&rooted_subtree_forms(t, k), &rooted_subtree_forms(t2, k)))
}

pub fn lcs_unrooted_bruteforce(t: &PlaneTree, t2: &PlaneTree) -> Result<usize, LcsError> {
    check(t, t2)?;
    let k = t.size().min(t2.size());
    Ok(best_common(&unrooted_subtree_forms(t, k), &unrooted_subtree_forms(t2, k)))
}
