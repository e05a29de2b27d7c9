//! Largest common rooted subtree with an optimal embedding.
use treelcs::lcs::{lcs_rooted_bruteforce, lcs_rooted_witness, rooted_upper_bound};
use treelcs::trees::parse;

fn main() {
    let a = parse("((()())(()))").unwrap();
    let b = parse("(()(()(()))())").unwrap();
    let (v, w) = lcs_rooted_witness(&a, &b).unwrap();
    println!("LCS• = {v}, level bound {}", rooted_upper_bound(&a, &b));
    println!("brute force agrees: {}", lcs_rooted_bruteforce(&a, &b).unwrap() == v);
    for (x, y) in w {
        println!("  {x} -> {y}");
    }
}
