//! Exact size law against unconditioned sampling.
use treelcs::estimators::replicate_fold;
use treelcs::offspring::exact_size_law;
use treelcs::samplers::sample_bgw;
use treelcs::{LawSpec, Seeds};

fn main() {
    let n_max = 9;
    let draws = 200_000u64;
    for spec in [LawSpec::BinaryHalf, LawSpec::GeometricHalf, LawSpec::PoissonOne] {
        let law = spec.build().unwrap();
        let exact = exact_size_law(&law, n_max).unwrap();
        let counts = replicate_fold(
            Seeds::new(1),
            draws,
            || vec![0u64; n_max + 1],
            |acc, _, rng| {
                if let Ok(t) = sample_bgw(&law, rng, n_max) {
                    acc[t.size()] += 1;
                }
            },
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
        println!("{} (σ² = {:.4})", spec.label(), law.variance());
        for n in 1..=n_max {
            let p = exact[n - 1];
            let q = counts[n] as f64 / draws as f64;
            println!("  n={n}  exact {p:.6}  empirical {q:.6}");
        }
    }
}
