//! Exceedance of truncated heavy-tailed sums.
use treelcs::estimators::{big_jumps_check, StepLaw};
use treelcs::{LawSpec, Seeds};

fn main() {
    let grid: Vec<f64> = (2..=8).map(f64::from).collect();
    let steps = StepLaw::TreeSize { law: LawSpec::BinaryHalf };
    let r = big_jumps_check(0.5, 1.0, 100, &grid, &steps, 200_000, Seeds::new(1)).unwrap();
    for (t, p) in grid.iter().zip(&r.exceed) {
        println!("t={t}  P(S_m >= t m^2) ≈ {p:.2e}");
    }
    println!("fitted rate {:?} vs 1/s = {}", r.fitted_rate, r.target_rate);

    let r = big_jumps_check(1.5, 2.0, 50, &[0.5, 1.0, 2.0, 4.0], &StepLaw::SymmetricPareto, 200_000, Seeds::new(2)).unwrap();
    println!("pareto α=1.5: {:?}, rate {:?}", r.exceed, r.fitted_rate);
}
