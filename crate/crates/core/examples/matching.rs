//! Maximum-weight bipartite matching.
use treelcs::assignment::{brute_force_matching_value, max_weight_matching, WeightMatrix};

fn main() {
    let w = WeightMatrix::from_rows(&[vec![4, 1, 3], vec![2, 0, 5], vec![3, 2, 2], vec![0, 6, 1]]);
    let m = max_weight_matching(&w);
    println!("value {} pairs {:?}", m.value, m.pairs);
    assert_eq!(m.value, brute_force_matching_value(&w));
}
