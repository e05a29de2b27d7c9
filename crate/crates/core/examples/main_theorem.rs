//! n^{-1/2} LCS against ĉ n^{-1/2} LCS3 at small sizes.
use treelcs::estimators::{estimate_c, ks_distance, replicate_map, wasserstein1, EmpiricalDistribution, LcsSampling};
use treelcs::lcs::{lcs3_length, lcs_unrooted};
use treelcs::samplers::sample_conditioned;
use treelcs::{LawSpec, Seeds};

fn main() {
    let law = LawSpec::GeometricHalf.build().unwrap();
    let seeds = Seeds::new(10);
    let c = estimate_c(&law, &law, 20_000, seeds.lane(0), LcsSampling::default()).unwrap();
    println!("ĉ = {:.3} [{:.3}, {:.3}]", c.point, c.ci_low, c.ci_high);
    for n in [64usize, 128, 256] {
        let pairs = replicate_map(seeds.lane(n as u64), 300, |_, rng| {
            let a = sample_conditioned(&law, n, rng).unwrap();
            let b = sample_conditioned(&law, n, rng).unwrap();
            (lcs_unrooted(&a, &b).unwrap() as f64, lcs3_length(&a, &b, 1.0, 1.0))
        });
        let r = (n as f64).sqrt();
        let x = EmpiricalDistribution::new(pairs.iter().map(|p| p.0 / r).collect());
        let y = EmpiricalDistribution::new(pairs.iter().map(|p| c.point * p.1 / r).collect());
        println!(
            "n={n:<4} mean LCS/√n {:.3}  mean ĉ·LCS3/√n {:.3}  KS {:.3}  W1 {:.3}",
            x.mean(),
            y.mean(),
            ks_distance(&x, &y).unwrap(),
            wasserstein1(&x, &y).unwrap()
        );
    }
}
