//! Level sums of functionals against the spine decomposition.
use treelcs::estimators::{builtin_library, many_to_one_check};
use treelcs::{LawSpec, Seeds};

fn main() {
    let law = LawSpec::GeometricHalf.build().unwrap();
    for n in 1..=4 {
        for (f, g) in builtin_library() {
            let r = many_to_one_check(&law, n, f, g, 200_000, Seeds::new(n as u64)).unwrap();
            println!(
                "n={n} {f:?} {g:?}: lhs {:.4} ± {:.4}, rhs {:.4} ± {:.4}, rel {:.4}",
                r.lhs, r.lhs_stderr, r.rhs, r.rhs_stderr, r.rel_error
            );
        }
    }
}
