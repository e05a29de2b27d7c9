//! Largest common (unrooted) subtree of two conditioned trees.
use std::time::Instant;
use treelcs::lcs::{lcs_rooted, lcs_unrooted, lcs_unrooted_bruteforce, lcs_unrooted_witness};
use treelcs::samplers::sample_conditioned;
use treelcs::trees::parse;
use treelcs::{LawSpec, Seeds};

fn main() {
    let a = parse("((((()))))").unwrap();
    let b = parse("(()()()())").unwrap();
    println!("path vs star: LCS = {} (brute force {})", lcs_unrooted(&a, &b).unwrap(), lcs_unrooted_bruteforce(&a, &b).unwrap());

    let law = LawSpec::GeometricHalf.build().unwrap();
    let mut rng = Seeds::new(7).stream(0);
    for n in [64, 256, 512] {
        let t = sample_conditioned(&law, n, &mut rng).unwrap();
        let u = sample_conditioned(&law, n, &mut rng).unwrap();
        let start = Instant::now();
        let (v, w) = lcs_unrooted_witness(&t, &u).unwrap();
        println!(
            "n={n:<4} LCS = {v:<4} LCS• = {:<4} witness pairs {:<4} ({:.2?})",
            lcs_rooted(&t, &u).unwrap(),
            w.len(),
            start.elapsed()
        );
    }
}
