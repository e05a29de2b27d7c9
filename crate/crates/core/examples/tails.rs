//! Height and rooted-LCS survival curves with log-log slopes.
use treelcs::estimators::{survival_curve, Statistic};
use treelcs::{LawSpec, Seeds};

fn main() {
    let law = LawSpec::BinaryHalf.build().unwrap();
    let grid = [10, 20, 40, 80];
    for stat in [Statistic::Height, Statistic::LcsRootedPair, Statistic::LcsRootedBiasedPair] {
        let c = survival_curve(stat, &law, &law, &grid, 200_000, Seeds::new(5)).unwrap();
        println!("{stat:?}: slope {:?}", c.slope);
        for (h, p) in grid.iter().zip(c.fitted()) {
            println!("  h={h:<3} {p:.5} ± {:.5}", c.stderr(*p));
        }
    }
    let exact = law.height_tail(80);
    println!("exact 80·P(Ht >= 80) = {:.4}", 80.0 * exact[80]);
}
