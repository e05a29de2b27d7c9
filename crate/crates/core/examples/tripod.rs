//! Largest common tripod (three-leaf subtree) via arm frontiers.
use treelcs::lcs::{lcs3_length, lcs3_of_frontiers, lcs_n_bruteforce, tripod_frontier};
use treelcs::samplers::sample_conditioned;
use treelcs::trees::PlaneTree;
use treelcs::{LawSpec, Seeds};

fn main() {
    let a = PlaneTree::spider(&[5, 3, 2]);
    let b = PlaneTree::spider(&[4, 4, 1, 1]);
    let fa = tripod_frontier(&a, 1.0);
    let fb = tripod_frontier(&b, 1.0);
    println!("frontier a {:?}", fa.integer_triples());
    println!("frontier b {:?}", fb.integer_triples());
    println!("LCS3 = {} (brute force {})", lcs3_of_frontiers(&fa, &fb), lcs_n_bruteforce(&a, &b, 3).unwrap());

    let law = LawSpec::GeometricHalf.build().unwrap();
    let mut rng = Seeds::new(3).stream(0);
    let t = sample_conditioned(&law, 2000, &mut rng).unwrap();
    let u = sample_conditioned(&law, 2000, &mut rng).unwrap();
    let s = 1.0 / (2000f64).sqrt();
    println!("rescaled LCS3 at n=2000: {:.3}", lcs3_length(&t, &u, s, s));
}
