use super::LcsError;
use crate::trees::PlaneTree;
use std::collections::HashSet;

pub const LCSN_MAX_SIZE: usize = 40;
pub const LCSN_MAX_LEAVES: usize = 5;

/// Total length of the subtree spanned by `points` (repeats allowed).
pub fn span_length(t: &PlaneTree, points: &[usize]) -> Result<usize, LcsError> {
    if let Some(&bad) = points.iter().find(|&&p| !t.contains(p)) {
        return Err(LcsError::NodeNotFound(bad));
    }
    let dist: Vec<Vec<usize>> = points.iter().map(|&p| t.distances_from(p)).collect();
    let m: Vec<Vec<usize>> = dist
        .iter()
        .map(|row| points.iter().map(|&q| row[q]).collect())
        .collect();
    Ok(span_from_distances(&m))
}

/// Spanned length from a pairwise distance matrix of tree points: each new
/// point adds its distance to the span of the previous ones.
fn span_from_distances(m: &[Vec<usize>]) -> usize {
    let mut total = 0;
    for k in 1..m.len() {
        let mut gap = usize::MAX;
        for i in 0..k {
            for j in i..k {
                gap = gap.min(m[i][k] + m[j][k] - m[i][j]);
            }
        }
        total += gap / 2;
    }
    total
}

/// Exhaustive LCS_N: the longest span over N-point configurations (repeats
/// allowed) whose distance matrices occur in both trees.
pub fn lcs_n_bruteforce(t: &PlaneTree, t2: &PlaneTree, n_leaves: usize) -> Result<usize, LcsError> {
    if t.size() > LCSN_MAX_SIZE || t2.size() > LCSN_MAX_SIZE {
        return Err(LcsError::TooLarge(format!(
            "tree sizes {} and {} exceed {LCSN_MAX_SIZE}",
            t.size(),
            t2.size()
        )));
    }
    if n_leaves > LCSN_MAX_LEAVES {
        return Err(LcsError::TooLarge(format!("N = {n_leaves} exceeds {LCSN_MAX_LEAVES}")));
    }
    if n_leaves <= 1 {
        return Ok(0);
    }
    let perms = permutations(n_leaves);
    let keys2: HashSet<Vec<u8>> = configurations(t2, n_leaves, &perms).into_iter().map(|(k, _)| k).collect();
    Ok(configurations(t, n_leaves, &perms)
        .into_iter()
        .filter(|(k, _)| keys2.contains(k))
        .map(|(_, len)| len)
        .max()
        .unwrap_or(0))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every multiset of `k` vertices, keyed by its distance matrix up to
/// relabelling (lexicographically least upper triangle over permutations),
/// with its spanned length.
fn configurations(t: &PlaneTree, k: usize, perms: &[Vec<usize>]) -> Vec<(Vec<u8>, usize)> {
    let d = t.distance_matrix();
    let n = t.size();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let m: Vec<Vec<usize>> = idx.iter().map(|&a| idx.iter().map(|&b| d[a][b]).collect()).collect();
        let key = perms
            .iter()
            .map(|p| {
                let mut key = Vec::with_capacity(k * (k - 1) / 2);
                for i in 0..k {
                    for j in i + 1..k {
                        key.push(m[p[i]][p[j]] as u8);
                    }
                }
                key
            })
            .min()
            .unwrap();
        out.push((key, span_from_distances(&m)));
        // Next non-decreasing index tuple.
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        let v = idx[pos - 1];
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_examples() {
        let chain = PlaneTree::chain(4);
        assert_eq!(span_length(&chain, &[0, 3]).unwrap(), 3);
        let star = PlaneTree::star(3);
        assert_eq!(span_length(&star, &[1, 2, 3]).unwrap(), 3);
        assert_eq!(span_length(&star, &[2, 2, 2]).unwrap(), 0);
        assert_eq!(span_length(&star, &[0, 1, 2, 3]).unwrap(), 3);
        assert_eq!(span_length(&star, &[7]), Err(LcsError::NodeNotFound(7)));
    }

    #[test]
    fn lcs_n_examples() {
        let k14 = PlaneTree::star(4);
        assert_eq!(lcs_n_bruteforce(&k14, &k14, 4).unwrap(), 4);
        assert_eq!(lcs_n_bruteforce(&k14, &PlaneTree::chain(5), 1).unwrap(), 0);
        assert_eq!(lcs_n_bruteforce(&k14, &PlaneTree::chain(5), 2).unwrap(), 2);
        assert!(matches!(lcs_n_bruteforce(&PlaneTree::chain(41), &k14, 3), Err(LcsError::TooLarge(_))));
        assert!(matches!(lcs_n_bruteforce(&k14, &k14, 6), Err(LcsError::TooLarge(_))));
    }
}
