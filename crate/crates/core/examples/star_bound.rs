//! The height-rearrangement lower bound for two stars, and max degrees
//! of conditioned trees under the log-tail law.
use treelcs::estimators::{sample_star_tree, star_bound_value, star_lower_bound, StarParams};
use treelcs::lcs::lcs_unrooted;
use treelcs::samplers::sample_conditioned;
use treelcs::{LawSpec, Seeds};

fn main() {
    let geo = LawSpec::GeometricHalf.build().unwrap();
    let mut rng = Seeds::new(4).stream(0);
    let (a, b) = loop {
        // lcs_unrooted is quadratic in size, so keep the pair small.
        if let (Ok(a), Ok(b)) = (sample_star_tree(&geo, 20, &mut rng, 2_000), sample_star_tree(&geo, 20, &mut rng, 2_000)) {
            break (a, b);
        }
    };
    println!("Δ=20: bound {} <= LCS {}", star_bound_value(&a, &b), lcs_unrooted(&a, &b).unwrap());

    for delta in [100, 1000, 10_000] {
        let r = star_lower_bound(&geo, delta, 20, Seeds::new(5), StarParams::default()).unwrap();
        let d = delta as f64;
        println!("Δ={delta:<6} mean bound {:.0}  (0.5 Δ ln Δ^(1/4) = {:.0})", r.point, 0.5 * d * d.powf(0.25).ln());
    }

    let n = 20_000;
    let law = LawSpec::Logtail { lambda: 1.5 }.build().unwrap();
    let degs: Vec<usize> = (0..10).map(|_| sample_conditioned(&law, n, &mut rng).unwrap().max_outdegree()).collect();
    println!("logtail n={n} max out-degrees {degs:?}");
}
