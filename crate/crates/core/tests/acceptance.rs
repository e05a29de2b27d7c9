//! Acceptance criteria 1–13. Each test prints one `criterion N: PASS|FAIL`
//! line with its measured values, then asserts.

use rand::Rng;
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::time::{Duration, Instant};
use treelcs::assignment::{max_weight_matching, WeightMatrix};
use treelcs::estimators::{
    big_jumps_check, builtin_library, estimate_p_eps, many_to_one_check, replicate_fold, star_lower_bound,
    survival_curve, StarParams, StepLaw, Statistic,
};
use treelcs::harness::{rerun, run_experiment, ExperimentConfig, Scenario, ScenarioOptions};
use treelcs::lcs::{
    lcs3_length, lcs_n_bruteforce, lcs_rooted, lcs_unrooted, lcs_unrooted_bruteforce, rooted_subtree_forms,
    unrooted_subtree_forms,
};
use treelcs::offspring::exact_size_law;
use treelcs::samplers::{sample_bgw, sample_conditioned};
use treelcs::trees::{enumerate_plane_trees, PlaneTree};
use treelcs::{LawSpec, OffspringLaw, Seeds, StreamRng};

fn verdict(id: u32, pass: bool, detail: String) {
    // Written to the process stdout so the line survives libtest capture.
    let line = format!("criterion {id}: {} {detail}\n", if pass { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(pass, "criterion {id} failed: {detail}");
}

fn law(s: LawSpec) -> OffspringLaw {
    s.build().unwrap()
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

fn best_common(a: &HashMap<String, usize>, b: &HashMap<String, usize>) -> usize {
    a.iter().filter(|(k, _)| b.contains_key(*k)).map(|(_, &s)| s).max().unwrap_or(0)
}

fn all_trees_up_to(n: usize) -> Vec<PlaneTree> {
    (1..=n).flat_map(enumerate_plane_trees).collect()
}

#[test]
fn criterion_01_rooted_oracle() {
    let start = Instant::now();
    let trees = all_trees_up_to(7);
    let forms: Vec<_> = trees.iter().map(|t| rooted_subtree_forms(t, t.size())).collect();
    let (mut pairs, mut agree) = (0u64, 0u64);
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in trees.iter().enumerate() {
            pairs += 1;
            agree += (lcs_rooted(a, b).unwrap() == best_common(&forms[i], &forms[j])) as u64;
        }
    }
    let ok = agree == pairs && within(start, Duration::from_secs(300));
    verdict(1, ok, format!("{agree}/{pairs} pairs agree in {:.1?}", start.elapsed()));
}

#[test]
fn criterion_02_unrooted_oracle() {
    let start = Instant::now();
    let trees = all_trees_up_to(6);
    let forms: Vec<_> = trees.iter().map(|t| unrooted_subtree_forms(t, t.size())).collect();
    let (mut pairs, mut agree) = (0u64, 0u64);
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in trees.iter().enumerate() {
            pairs += 1;
            agree += (lcs_unrooted(a, b).unwrap() == best_common(&forms[i], &forms[j])) as u64;
        }
    }
    let geo = law(LawSpec::GeometricHalf);
    let mut rng = StreamRng::new(2, 0);
    let (mut rpairs, mut ragree) = (0u64, 0u64);
    for _ in 0..1000 {
        let n = rng.random_range(1..=9);
        let m = rng.random_range(1..=9);
        let a = sample_conditioned(&geo, n, &mut rng).unwrap();
        let b = sample_conditioned(&geo, m, &mut rng).unwrap();
        rpairs += 1;
        ragree += (lcs_unrooted(&a, &b).unwrap() == lcs_unrooted_bruteforce(&a, &b).unwrap()) as u64;
    }
    let ok = agree == pairs && ragree == rpairs && within(start, Duration::from_secs(600));
    verdict(
        2,
        ok,
        format!("exhaustive {agree}/{pairs}, random {ragree}/{rpairs} in {:.1?}", start.elapsed()),
    );
}

#[test]
fn criterion_03_tripod() {
    let start = Instant::now();
    let geo = law(LawSpec::GeometricHalf);
    let mut rng = StreamRng::new(3, 0);
    let mut agree = 0;
    for _ in 0..500 {
        let a = sample_conditioned(&geo, rng.random_range(1..=25), &mut rng).unwrap();
        let b = sample_conditioned(&geo, rng.random_range(1..=25), &mut rng).unwrap();
        let fast = lcs3_length(&a, &b, 1.0, 1.0);
        let slow = lcs_n_bruteforce(&a, &b, 3).unwrap() as f64;
        agree += (fast == slow) as u32;
    }
    let ok = agree == 500 && within(start, Duration::from_secs(600));
    verdict(3, ok, format!("{agree}/500 pairs equal in {:.1?}", start.elapsed()));
}

/// Exhaustive assignment value: rows matched injectively into columns or
/// left unmatched.
fn perm_brute(w: &[Vec<u32>]) -> u64 {
    fn go(w: &[Vec<u32>], i: usize, used: &mut Vec<bool>) -> u64 {
        if i == w.len() {
            return 0;
        }
        let mut best = go(w, i + 1, used);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                best = best.max(w[i][j] as u64 + go(w, i + 1, used));
                used[j] = false;
            }
        }
        best
    }
    go(w, 0, &mut vec![false; w[0].len()])
}

#[test]
fn criterion_04_matching() {
    let start = Instant::now();
    let mut rng = StreamRng::new(4, 0);
    let mut agree = 0;
    for _ in 0..10_000 {
        let small = rng.random_range(1..=6);
        let large = rng.random_range(1..=7);
        let (r, c) = if rng.random::<bool>() { (small, large) } else { (large, small) };
        let wmax = [1u32, 5, 1000][rng.random_range(0..3)];
        let rows: Vec<Vec<u32>> = (0..r).map(|_| (0..c).map(|_| rng.random_range(0..=wmax)).collect()).collect();
        let m = max_weight_matching(&WeightMatrix::from_rows(&rows));
        agree += (m.value == perm_brute(&rows)) as u32;
    }
    let ok = agree == 10_000 && within(start, Duration::from_secs(60));
    verdict(4, ok, format!("{agree}/10000 matrices agree in {:.1?}", start.elapsed()));
}

/// Exact law of the size-`n` plane tree under `law`, by enumeration.
fn exact_conditional(l: &OffspringLaw, n: usize) -> HashMap<Vec<usize>, f64> {
    let trees = enumerate_plane_trees(n);
    let w: Vec<f64> = trees
        .iter()
        .map(|t| t.preorder_degrees().iter().map(|&k| l.pmf().get(k).copied().unwrap_or(0.0)).product())
        .collect();
    let total: f64 = w.iter().sum();
    trees.iter().zip(&w).map(|(t, &x)| (t.preorder_degrees(), x / total)).filter(|(_, p)| *p > 0.0).collect()
}

#[test]
fn criterion_05_sampler_exactness() {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for spec in [LawSpec::BinaryHalf, LawSpec::GeometricHalf] {
        let l = law(spec.clone());
        for n in 1..=9 {
            let exact = exact_conditional(&l, n);
            if exact.is_empty() {
                continue;
            }
            let draws = 100_000u64;
            let counts = replicate_fold(
                Seeds::new(5).lane(n as u64),
                draws,
                HashMap::<Vec<usize>, u64>::new,
                |acc, _, rng| *acc.entry(sample_conditioned(&l, n, rng).unwrap().preorder_degrees()).or_default() += 1,
                |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_default() += v;
                    }
                    a
                },
            );
            let mut tv: f64 = exact
                .iter()
                .map(|(k, p)| (counts.get(k).copied().unwrap_or(0) as f64 / draws as f64 - p).abs())
                .sum();
            tv += counts.iter().filter(|(k, _)| !exact.contains_key(*k)).map(|(_, &c)| c as f64 / draws as f64).sum::<f64>();
            tv *= 0.5;
            let pass = tv < 0.01;
            ok &= pass;
            details.push(format!("{}:n={n}:tv={tv:.4}{}", spec.label(), if pass { "" } else { "(!)" }));
        }
        // Unconditioned sizes against the exact size law.
        let draws = 1_000_000u64;
        let counts = replicate_fold(
            Seeds::new(55),
            draws,
            || vec![0u64; 10],
            |acc, _, rng| {
                if let Ok(t) = sample_bgw(&l, rng, 9) {
                    acc[t.size()] += 1;
                }
            },
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
        let exact = exact_size_law(&l, 9).unwrap();
        let mut worst: f64 = 0.0;
        for n in 1..=9 {
            let p = exact[n - 1];
            let se = (p * (1.0 - p) / draws as f64).sqrt();
            let z = if se > 0.0 { (counts[n] as f64 / draws as f64 - p).abs() / se } else { counts[n] as f64 };
            worst = worst.max(z);
        }
        ok &= worst <= 3.0;
        details.push(format!("{}:size-law max|z|={worst:.2}", spec.label()));
    }
    ok &= within(start, Duration::from_secs(900));
    verdict(5, ok, format!("{} in {:.1?}", details.join(" "), start.elapsed()));
}

#[test]
fn criterion_06_many_to_one() {
    let start = Instant::now();
    let mut worst: (f64, String) = (0.0, String::new());
    for spec in [LawSpec::BinaryHalf, LawSpec::GeometricHalf] {
        let l = law(spec.clone());
        for n in 1..=4 {
            for (k, (f, g)) in builtin_library().into_iter().enumerate() {
                let r = many_to_one_check(&l, n, f, g, 1_000_000, Seeds::new(6).lane(n as u64).lane(k as u64)).unwrap();
                if r.rel_error >= worst.0 {
                    worst = (r.rel_error, format!("{}/n={n}/{f:?}/{g:?}", spec.label()));
                }
            }
        }
    }
    let ok = worst.0 < 0.02 && within(start, Duration::from_secs(900));
    verdict(6, ok, format!("max rel_error {:.4} at {} in {:.1?}", worst.0, worst.1, start.elapsed()));
}

#[test]
fn criterion_07_height_tail() {
    let start = Instant::now();
    let l = law(LawSpec::BinaryHalf);
    let c = survival_curve(Statistic::Height, &l, &l, &[50], 10_000_000, Seeds::new(7)).unwrap();
    let v = 50.0 * c.at_least[0];
    let se = 50.0 * c.stderr(c.at_least[0]);
    let exact = 50.0 * l.height_tail(50)[50];
    let ok = (1.8..=2.2).contains(&v) && within(start, Duration::from_secs(1200));
    verdict(
        7,
        ok,
        format!("50·P̂(Ht>=50) = {v:.4} ± {se:.4} (exact recursion {exact:.4}) in {:.1?}", start.elapsed()),
    );
}

#[test]
fn criterion_08_rooted_lcs_tail() {
    let start = Instant::now();
    let l = law(LawSpec::BinaryHalf);
    let grid = [10, 13, 16, 20, 25, 32, 40, 50, 63, 79, 100];
    let c = survival_curve(Statistic::LcsRootedPair, &l, &l, &grid, 1_000_000, Seeds::new(8)).unwrap();
    let slope = c.slope.unwrap_or(f64::NAN);
    let ok = (-2.3..=-1.7).contains(&slope) && within(start, Duration::from_secs(1800));
    verdict(
        8,
        ok,
        format!(
            "slope {slope:.3}, P̂(LCS•>10) = {:.4}, P̂(LCS•>100) = {:.5}, censored {} in {:.1?}",
            c.exceed[0],
            c.exceed[grid.len() - 1],
            c.n_censored,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_09_height_vs_lcs() {
    let start = Instant::now();
    let l = law(LawSpec::BinaryHalf);
    let p = estimate_p_eps(&l, &l, 0.5, &[10.0, 20.0, 40.0], 10_000_000, Seeds::new(9)).unwrap();
    let dec = p[1].p < p[0].p && p[2].p < p[1].p;
    let ok = dec && p[2].p < 40f64.powi(-2) && within(start, Duration::from_secs(1800));
    verdict(
        9,
        ok,
        format!(
            "p̂(10) = {:.3e}, p̂(20) = {:.3e}, p̂(40) = {:.3e} (bound {:.3e}) in {:.1?}",
            p[0].p,
            p[1].p,
            p[2].p,
            40f64.powi(-2),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_10_main_theorem() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        scenario: Scenario::MainTheorem,
        law: LawSpec::GeometricHalf,
        law2: None,
        n_list: vec![256, 1024],
        samples: 2000,
        master_seed: 10,
        workers: None,
        output_dir: dir.path().to_path_buf(),
        options: ScenarioOptions {
            c_samples: Some(10_000),
            ..ScenarioOptions::default()
        },
    };
    let m = run_experiment(&config).unwrap();
    let ks = |n: &str| m.metrics.iter().find(|x| x.name == "ks" && x.cell == n).map(|x| x.value).unwrap_or(f64::NAN);
    let w1 = |n: &str| m.metrics.iter().find(|x| x.name == "w1" && x.cell == n).map(|x| x.value).unwrap_or(f64::NAN);
    let (k256, k1024) = (ks("256"), ks("1024"));
    let c = m.c_hat.clone().unwrap();
    let ok = k1024 < k256 && k1024 < 0.15 && c.censored_fraction() <= 1e-3 && within(start, Duration::from_secs(7200));
    verdict(
        10,
        ok,
        format!(
            "ĉ = {:.3} [{:.3}, {:.3}], KS(256) = {k256:.3}, KS(1024) = {k1024:.3}, W1 = {:.3}/{:.3} in {:.1?}",
            c.point,
            c.ci_low,
            c.ci_high,
            w1("256"),
            w1("1024"),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_11_big_jumps() {
    let start = Instant::now();
    let grid: Vec<f64> = (2..=8).map(f64::from).collect();
    let r = big_jumps_check(
        0.5,
        1.0,
        100,
        &grid,
        &StepLaw::TreeSize { law: LawSpec::BinaryHalf },
        1_000_000,
        Seeds::new(11),
    )
    .unwrap();
    let slope = r.fitted_rate.map(|x| -x).unwrap_or(f64::NAN);
    let positive = r.exceed.iter().filter(|&&p| p > 0.0).count();
    let monotone = r.exceed.windows(2).all(|w| w[1] <= w[0]);
    let ok = slope <= -0.5 && monotone && positive >= 2 && within(start, Duration::from_secs(900));
    verdict(
        11,
        ok,
        format!("slope of ln P̂ in t = {slope:.3}, P̂ = {:?} in {:.1?}", r.exceed, start.elapsed()),
    );
}

#[test]
fn criterion_12_star_bound() {
    let start = Instant::now();
    let geo = law(LawSpec::GeometricHalf);
    let delta = 10_000usize;
    let r = star_lower_bound(&geo, delta, 100, Seeds::new(12), StarParams::default()).unwrap();
    let d = delta as f64;
    let threshold = 0.5 * d * d.powf(0.25).ln();

    let n = 100_000usize;
    let lt = law(LawSpec::Logtail { lambda: 1.5 });
    let deg_threshold = 0.1 * (n as f64 / (n as f64).ln().powf(1.5)).sqrt();
    let degrees = treelcs::estimators::replicate_map(Seeds::new(121), 50, |_, rng| {
        sample_conditioned(&lt, n, rng).map(|t| t.max_outdegree()).unwrap_or(0)
    });
    let hits = degrees.iter().filter(|&&k| k as f64 >= deg_threshold).count();
    let ok = r.point >= threshold && hits * 10 >= 9 * 50 && within(start, Duration::from_secs(3600));
    verdict(
        12,
        ok,
        format!(
            "mean bound {:.0} vs {threshold:.0}; {hits}/50 trees with out-degree >= {deg_threshold:.2} (min {}) in {:.1?}",
            r.point,
            degrees.iter().min().unwrap(),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_13_determinism() {
    let start = Instant::now();
    let base = tempfile::tempdir().unwrap();
    let mk = |scenario, n_list: Vec<usize>, samples, options| ExperimentConfig {
        scenario,
        law: LawSpec::GeometricHalf,
        law2: Some(LawSpec::BinaryHalf),
        n_list,
        samples,
        master_seed: 13,
        workers: Some(1),
        output_dir: base.path().join(format!("{scenario:?}-1")),
        options,
    };
    let configs = vec![
        mk(
            Scenario::MainTheorem,
            vec![17, 33, 65],
            40,
            ScenarioOptions {
                c_samples: Some(2000),
                ..Default::default()
            },
        ),
        mk(Scenario::SamplerValidation, vec![1, 3, 5, 7], 5000, ScenarioOptions::default()),
        mk(Scenario::ManyToOne, vec![1, 3], 20_000, ScenarioOptions::default()),
        mk(
            Scenario::RootedTail,
            vec![],
            20_000,
            ScenarioOptions {
                h_grid: Some(vec![2, 4, 8, 16]),
                ..Default::default()
            },
        ),
        mk(Scenario::HeightVsLcs, vec![], 20_000, ScenarioOptions::default()),
        mk(Scenario::BigJumps, vec![], 20_000, ScenarioOptions::default()),
        mk(
            Scenario::StarCounterexample,
            vec![101],
            10,
            ScenarioOptions {
                delta: Some(200),
                star_samples: Some(10),
                ..Default::default()
            },
        ),
        mk(Scenario::LcsOracle, vec![5], 30, ScenarioOptions::default()),
    ];
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for c in &configs {
        let first = run_experiment(c).unwrap();
        for w in [4, 16] {
            let dir = base.path().join(format!("{:?}-{w}", c.scenario));
            let again = rerun(&c.output_dir, &dir, Some(w)).unwrap();
            for (a, b) in first.files.iter().zip(&again.files) {
                compared += 1;
                let same = a.path == b.path
                    && a.sha256 == b.sha256
                    && fs::read(c.output_dir.join(&a.path)).unwrap() == fs::read(dir.join(&b.path)).unwrap();
                if !same {
                    mismatches.push(format!("{:?}/{}@{w}", c.scenario, a.path));
                }
            }
            if first.files.len() != again.files.len() {
                mismatches.push(format!("{:?} file count @{w}", c.scenario));
            }
        }
    }
    let ok = mismatches.is_empty() && compared > 0;
    verdict(
        13,
        ok,
        format!("{compared} CSV comparisons across 1/4/16 workers, mismatches {mismatches:?} in {:.1?}", start.elapsed()),
    );
}
