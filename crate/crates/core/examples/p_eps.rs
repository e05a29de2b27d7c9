//! How often LCS• beats the smaller height by a factor h^ε.
use treelcs::estimators::estimate_p_eps;
use treelcs::{LawSpec, Seeds};

fn main() {
    let law = LawSpec::BinaryHalf.build().unwrap();
    for eps in [0.25, 0.5] {
        let pts = estimate_p_eps(&law, &law, eps, &[5.0, 10.0, 20.0, 40.0], 1_000_000, Seeds::new(9)).unwrap();
        println!("eps = {eps}");
        for p in pts {
            println!("  h={:<3} p̂ = {:.2e} ± {:.1e} ({} hits)", p.h, p.p, p.stderr, p.hits);
        }
    }
}
