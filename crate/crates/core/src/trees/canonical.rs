use super::PlaneTree;

/// AHU code of the rooted tree: children codes sorted, so two rooted trees
/// are isomorphic (ignoring plane order) iff their codes are equal.
pub fn canonical_rooted(tree: &PlaneTree) -> String {
    rooted_code(tree, 0)
}

fn rooted_code(tree: &PlaneTree, root: usize) -> String {
    let n = tree.size();
    let rerooted;
    let t = if root == 0 {
        tree
    } else {
        rerooted = tree.reroot(root).expect("root in tree");
        &rerooted
    };
    let mut codes: Vec<String> = vec![String::new(); n];
    for u in (0..n).rev() {
        let mut kids: Vec<String> = t.children(u).map(|c| std::mem::take(&mut codes[c])).collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 * t.subtree_size(u));
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        codes[u] = s;
    }
    std::mem::take(&mut codes[0])
}

/// Code of the underlying unrooted tree, taken at the centre (the smaller
/// of the two codes when there are two centres).
pub fn canonical_unrooted(tree: &PlaneTree) -> String {
    centers(tree)
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .min()
        .expect("nonempty tree has a centre")
}

fn centers(tree: &PlaneTree) -> Vec<usize> {
    let n = tree.size();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|u| tree.degree(u)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &u in &layer {
            for w in tree.neighbors(u) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse;

    #[test]
    fn plane_order_is_ignored() {
        let a = parse("(()(()))").unwrap();
        let b = parse("((())())").unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical_rooted(&a), canonical_rooted(&b));
    }

    #[test]
    fn rooted_vs_unrooted() {
        let end = PlaneTree::chain(3);
        let mid = end.reroot(1).unwrap();
        assert_ne!(canonical_rooted(&end), canonical_rooted(&mid));
        assert_eq!(canonical_unrooted(&end), canonical_unrooted(&mid));
        let path4 = PlaneTree::chain(4);
        assert_eq!(canonical_unrooted(&path4), canonical_unrooted(&path4.reroot(2).unwrap()));
        assert_ne!(canonical_unrooted(&path4), canonical_unrooted(&PlaneTree::star(3)));
    }
}
