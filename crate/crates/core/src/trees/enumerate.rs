use super::PlaneTree;

/// Catalan number `C_k`.
pub fn catalan(k: usize) -> u64 {
    (0..k).fold(1u64, |c, i| c * 2 * (2 * i as u64 + 1) / (i as u64 + 2))
}

/// Every plane tree with `n` vertices, in lexicographic order of their
/// preorder degree sequences. There are `C_{n-1}` of them.
pub fn enumerate_plane_trees(n: usize) -> Vec<PlaneTree> {
    fn extend(degrees: &mut Vec<usize>, n: usize, open: usize, out: &mut Vec<PlaneTree>) {
        // `open` = vertices promised but not yet placed.
        let placed = degrees.len();
        if open == 0 {
            if placed == n {
                out.push(PlaneTree::from_preorder_degrees_unchecked(degrees));
            }
            return;
        }
        let left = n - placed;
        // Placing degree d leaves open - 1 + d pending, all of which need a slot.
        for d in 0..left {
            if open - 1 + d > left - 1 {
                break;
            }
            degrees.push(d);
            extend(degrees, n, open - 1 + d, out);
            degrees.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(&mut Vec::with_capacity(n), n, 1, &mut out);
    }
    out
}
