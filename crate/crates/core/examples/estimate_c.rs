//! The constant c = E[LCS•(τ*, τ*')] by median of means.
use treelcs::estimators::{estimate_c, LcsSampling};
use treelcs::{LawSpec, Seeds};

fn main() {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    for (a, b) in [
        (LawSpec::GeometricHalf, LawSpec::GeometricHalf),
        (LawSpec::BinaryHalf, LawSpec::BinaryHalf),
        (LawSpec::GeometricHalf, LawSpec::PoissonOne),
    ] {
        let r = estimate_c(&a.build().unwrap(), &b.build().unwrap(), samples, Seeds::new(11), LcsSampling::default()).unwrap();
        println!(
            "{:>15} x {:<15} ĉ = {:.3}  [{:.3}, {:.3}]  censored {}",
            a.label(),
            b.label(),
            r.point,
            r.ci_low,
            r.ci_high,
            r.n_censored
        );
    }
}
