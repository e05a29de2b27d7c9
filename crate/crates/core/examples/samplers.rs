//! Conditioned, root-biased and spine samplers.
use treelcs::samplers::{sample_conditioned, sample_root_biased, sample_spine, DEFAULT_CAP};
use treelcs::trees::serialize;
use treelcs::{LawSpec, Seeds};

fn main() {
    let law = LawSpec::GeometricHalf.build().unwrap();
    let seeds = Seeds::new(2024);

    let mut rng = seeds.stream(0);
    for n in [5, 10, 1000] {
        let t = sample_conditioned(&law, n, &mut rng).unwrap();
        let shown = if n <= 10 { serialize(&t) } else { format!("height {}", t.height()) };
        println!("conditioned n={n:<5} {shown}");
    }

    let t = sample_root_biased(&law, &mut rng, DEFAULT_CAP).unwrap();
    println!("root-biased        root degree {} size {}", t.outdegree(t.root()), t.size());

    let s = sample_spine(&law, 4, &mut rng, DEFAULT_CAP).unwrap();
    println!("spine              U = {:?}, size {}", s.spine, s.tree.size());
    for (i, trim) in s.trims.iter().enumerate() {
        println!("  Trim(U_{}) = {}", i + 1, serialize(trim));
    }

    let binary = LawSpec::BinaryHalf.build().unwrap();
    match sample_conditioned(&binary, 4, &mut rng) {
        Err(e) => println!("binary n=4: {e}"),
        Ok(_) => unreachable!(),
    }
}
