use super::config::DEFAULT_H_GRID;
use super::{CellRecord, ExperimentConfig, HarnessError, RunOutput, Scenario};
use crate::estimators::{
    big_jumps_check, builtin_library, estimate_c, estimate_p_eps, ks_distance, many_to_one_check, replicate_fold,
    replicate_map, star_lower_bound, survival_curve, wasserstein1, EmpiricalDistribution, FSpec, GSpec, LcsSampling,
    StarParams, StepLaw, Statistic,
};
use crate::lcs::{
    lcs3_length, lcs_rooted, lcs_rooted_with_budget, lcs_unrooted, lcs_unrooted_with_budget, rooted_subtree_forms,
    unrooted_subtree_forms, DEFAULT_PAIR_BUDGET,
};
use crate::offspring::{exact_size_law, LawSpec, OffspringLaw, EXACT_SIZE_MAX};
use crate::rng::Seeds;
use crate::samplers::{sample_bgw, sample_conditioned, size_is_supported};
use crate::trees::{enumerate_plane_trees, PlaneTree};
use std::collections::HashMap;

/// Largest size enumerated exhaustively by `sampler_validation`.
pub const ENUMERATION_MAX: usize = 12;
/// `lcs_oracle` checks all pairs up to this size...
pub const EXHAUSTIVE_MAX: usize = 7;
/// ...and random conditioned pairs up to this one.
pub const RANDOM_MAX: usize = 12;

struct Ctx<'a> {
    config: &'a ExperimentConfig,
    law: OffspringLaw,
    law2: OffspringLaw,
    base: Seeds,
    out: RunOutput,
}

impl Ctx<'_> {
    fn cell(&mut self, name: String, index: u64, samples: u64) -> Seeds {
        let seeds = self.base.lane(index + 1);
        self.out.cells.push(CellRecord {
            name,
            seeds,
            samples,
            censored: 0,
            error: None,
        });
        seeds
    }

    fn last_cell(&mut self) -> &mut CellRecord {
        self.out.cells.last_mut().expect("cell registered")
    }

    fn budget(&self) -> u64 {
        self.config.options.budget.unwrap_or(DEFAULT_PAIR_BUDGET)
    }
}

pub(crate) fn run(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let (law, law2) = config.laws()?;
    let mut ctx = Ctx {
        config,
        law,
        law2,
        base: Seeds::new(config.master_seed).lane(config.scenario.tag()),
        out: RunOutput::default(),
    };
    match config.scenario {
        Scenario::SamplerValidation => sampler_validation(&mut ctx),
        Scenario::LcsOracle => lcs_oracle(&mut ctx),
        Scenario::MainTheorem => main_theorem(&mut ctx),
        Scenario::RootedTail => rooted_tail(&mut ctx),
        Scenario::HeightVsLcs => height_vs_lcs(&mut ctx),
        Scenario::ManyToOne => many_to_one(&mut ctx),
        Scenario::BigJumps => big_jumps(&mut ctx),
        Scenario::StarCounterexample => star_counterexample(&mut ctx),
    }?;
    Ok(ctx.out)
}

fn est_err(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config(e.to_string())
}

/// Exact conditional law of the size-`n` trees, keyed by degree sequence.
pub(crate) fn conditional_law(law: &OffspringLaw, n: usize) -> (Vec<PlaneTree>, Vec<f64>) {
    let trees = enumerate_plane_trees(n);
    let weights: Vec<f64> = trees
        .iter()
        .map(|t| t.preorder_degrees().iter().map(|&k| law.prob(k)).product())
        .collect();
    let total: f64 = weights.iter().sum();
    let p = weights.iter().map(|w| w / total).collect();
    (trees, p)
}

fn sampler_validation(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let law = ctx.law.clone();
    let label = law.spec().label();
    let samples = ctx.config.samples;
    let mut rows = Vec::new();
    for (i, &n) in ctx.config.n_list.clone().iter().enumerate() {
        let seeds = ctx.cell(format!("tv/{n}"), i as u64, samples);
        if n > ENUMERATION_MAX {
            ctx.last_cell().error = Some(format!("enumeration limited to n <= {ENUMERATION_MAX}"));
            continue;
        }
        let (trees, p) = conditional_law(&law, n);
        let index: HashMap<Vec<usize>, usize> =
            trees.iter().enumerate().map(|(k, t)| (t.preorder_degrees(), k)).collect();
        let (counts, failed) = replicate_fold(
            seeds,
            samples,
            || (vec![0u64; trees.len()], 0u64),
            |acc, _, rng| match sample_conditioned(&law, n, rng) {
                Ok(t) => acc.0[index[&t.preorder_degrees()]] += 1,
                Err(_) => acc.1 += 1,
            },
            |mut a, b| {
                a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
                (a.0, a.1 + b.1)
            },
        );
        ctx.last_cell().censored = failed;
        let drawn = (samples - failed).max(1) as f64;
        let tv = 0.5 * counts.iter().zip(&p).map(|(&c, &q)| (c as f64 / drawn - q).abs()).sum::<f64>();
        if samples > 0 {
            ctx.out.metric("tv", format!("{label}/{n}"), tv);
        }
        rows.push(format!("{label},{n},{},{samples},{tv}", trees.len()));
    }
    ctx.out.table("sampler_validation.csv", "law,n,trees,draws,tv", rows);

    // Unconditioned sizes against the exact size law.
    let n_max = ctx.config.n_list.iter().copied().max().unwrap_or(0).min(EXACT_SIZE_MAX);
    let draws = ctx.config.options.size_samples.unwrap_or(samples);
    let seeds = ctx.cell("size_law".into(), ctx.config.n_list.len() as u64, draws);
    let mut rows = Vec::new();
    if n_max > 0 {
        let exact = exact_size_law(&law, n_max).map_err(est_err)?;
        let counts = replicate_fold(
            seeds,
            draws,
            || vec![0u64; n_max + 1],
            |acc, _, rng| match sample_bgw(&law, rng, n_max) {
                Ok(t) => acc[t.size()] += 1,
                Err(_) => acc[0] += 1,
            },
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
        let nf = draws.max(1) as f64;
        let mut worst: f64 = 0.0;
        for n in 1..=n_max {
            let q = exact[n - 1];
            let emp = counts[n] as f64 / nf;
            let se = (q * (1.0 - q) / nf).sqrt();
            let z = if se > 0.0 { (emp - q) / se } else if emp == q { 0.0 } else { f64::INFINITY };
            worst = worst.max(z.abs());
            rows.push(format!("{label},{n},{q},{emp},{se},{z}"));
        }
        if draws > 0 {
            ctx.out.metric("size_law_max_abs_z", label.clone(), worst);
        }
    }
    ctx.out.table("size_law.csv", "law,n,exact,empirical,stderr,z", rows);
    Ok(())
}

/// `max { size(f) : f a subtree form of both }`.
fn best_common(a: &HashMap<String, usize>, b: &HashMap<String, usize>) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter(|(k, _)| large.contains_key(*k))
        .map(|(_, &s)| s)
        .max()
        .unwrap_or(0)
}

/// Agreement counts of the DP against subtree-form enumeration over all
/// pairs of plane trees with at most `n` vertices.
pub(crate) fn exhaustive_agreement(n: usize, rooted: bool) -> (u64, u64) {
    let trees: Vec<PlaneTree> = (1..=n).flat_map(enumerate_plane_trees).collect();
    let forms: Vec<HashMap<String, usize>> = trees
        .iter()
        .map(|t| if rooted { rooted_subtree_forms(t, t.size()) } else { unrooted_subtree_forms(t, t.size()) })
        .collect();
    let mut pairs = 0;
    let mut agree = 0;
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in trees.iter().enumerate() {
            let dp = if rooted { lcs_rooted(a, b) } else { lcs_unrooted(a, b) }.expect("small pair");
            pairs += 1;
            agree += (dp == best_common(&forms[i], &forms[j])) as u64;
        }
    }
    (pairs, agree)
}

fn lcs_oracle(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let mut rows = Vec::new();
    let mut disagreements = 0u64;
    let law = ctx.law.clone();
    let samples = ctx.config.samples;
    for (i, &n) in ctx.config.n_list.clone().iter().enumerate() {
        let seeds = ctx.cell(format!("oracle/{n}"), i as u64, samples);
        if n <= EXHAUSTIVE_MAX {
            for rooted in [true, false] {
                let kind = if rooted { "rooted" } else { "unrooted" };
                let (pairs, agree) = exhaustive_agreement(n, rooted);
                disagreements += pairs - agree;
                rows.push(format!("exhaustive_{kind},{n},{pairs},{agree}"));
            }
        }
        if n > RANDOM_MAX {
            ctx.last_cell().error = Some(format!("form oracle limited to n <= {RANDOM_MAX}"));
            continue;
        }
        if size_is_supported(&law, n) && samples > 0 {
            let hits = replicate_map(seeds, samples, |_, rng| {
                let a = sample_conditioned(&law, n, rng).ok()?;
                let b = sample_conditioned(&law, n, rng).ok()?;
                let r = lcs_rooted(&a, &b).ok()? == best_common(&rooted_subtree_forms(&a, n), &rooted_subtree_forms(&b, n));
                let u = lcs_unrooted(&a, &b).ok()?
                    == best_common(&unrooted_subtree_forms(&a, n), &unrooted_subtree_forms(&b, n));
                Some((r, u))
            });
            let done: Vec<(bool, bool)> = hits.iter().flatten().copied().collect();
            ctx.last_cell().censored = samples - done.len() as u64;
            let r = done.iter().filter(|x| x.0).count() as u64;
            let u = done.iter().filter(|x| x.1).count() as u64;
            let m = done.len() as u64;
            disagreements += 2 * m - r - u;
            rows.push(format!("random_rooted,{n},{m},{r}"));
            rows.push(format!("random_unrooted,{n},{m},{u}"));
        }
    }
    ctx.out.table("lcs_oracle.csv", "kind,n,pairs,agree", rows);
    if !ctx.config.n_list.is_empty() {
        ctx.out.metric("disagreements", "all", disagreements as f64);
    }
    Ok(())
}

/// One conditioned pair of the main-theorem table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct PairRow {
    pub lcs: usize,
    pub lcs_rooted: usize,
    pub lcs3: usize,
    pub ht: (usize, usize),
    pub maxdeg: (usize, usize),
    pub censored: bool,
}

pub(crate) fn pair_row(a: &PlaneTree, b: &PlaneTree, budget: u64) -> PairRow {
    let lcs3 = lcs3_length(a, b, 1.0, 1.0).round() as usize;
    let rooted = lcs_rooted_with_budget(a, b, budget).ok();
    let unrooted = lcs_unrooted_with_budget(a, b, budget).ok();
    let floor = a.height().min(b.height()) + 1;
    let lcs_rooted = rooted.unwrap_or(floor);
    PairRow {
        lcs: unrooted.unwrap_or(lcs_rooted.max(lcs3 + 1)),
        lcs_rooted,
        lcs3,
        ht: (a.height(), b.height()),
        maxdeg: (a.max_outdegree(), b.max_outdegree()),
        censored: rooted.is_none() || unrooted.is_none(),
    }
}

fn main_theorem(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let (law, law2) = (ctx.law.clone(), ctx.law2.clone());
    let samples = ctx.config.samples;
    let budget = ctx.budget();
    let c_samples = if samples == 0 { 0 } else { ctx.config.options.c_samples.unwrap_or(10_000) };
    let c_seeds = ctx.cell("c_hat".into(), 0, c_samples);
    let c_hat = if c_samples > 0 {
        let limits = LcsSampling {
            budget,
            ..LcsSampling::default()
        };
        let r = estimate_c(&law, &law2, c_samples, c_seeds, limits).map_err(est_err)?;
        ctx.last_cell().censored = r.n_censored;
        ctx.out.metric("c_censored_fraction", "c_hat", r.censored_fraction());
        ctx.out.c_hat = Some(r.clone());
        r.point
    } else {
        f64::NAN
    };
    let mut rows = Vec::new();
    let mut dist_rows = Vec::new();
    let mut ks_seen = Vec::new();
    for (i, &n) in ctx.config.n_list.clone().iter().enumerate() {
        let seeds = ctx.cell(format!("pairs/{n}"), i as u64 + 1, samples);
        let pairs = replicate_map(seeds, samples, |_, rng| {
            let a = sample_conditioned(&law, n, rng).ok()?;
            let b = sample_conditioned(&law2, n, rng).ok()?;
            Some(pair_row(&a, &b, budget))
        });
        let mut censored = 0;
        let mut x = Vec::new();
        let mut y = Vec::new();
        let root_n = (n as f64).sqrt();
        for (rep, p) in pairs.iter().enumerate() {
            match p {
                Some(p) => {
                    censored += p.censored as u64;
                    rows.push(format!(
                        "{n},{rep},{},{},{},{},{},{},{},{}",
                        p.lcs, p.lcs_rooted, p.lcs3, p.ht.0, p.ht.1, p.maxdeg.0, p.maxdeg.1, p.censored as u8
                    ));
                    if !p.censored {
                        x.push(p.lcs as f64 / root_n);
                        y.push(c_hat * p.lcs3 as f64 / root_n);
                    }
                }
                None => {
                    censored += 1;
                    rows.push(format!("{n},{rep},0,0,0,0,0,0,0,1"));
                }
            }
        }
        ctx.last_cell().censored = censored;
        let (xa, ya) = (EmpiricalDistribution::new(x), EmpiricalDistribution::new(y));
        let ks = ks_distance(&xa, &ya).unwrap_or(f64::NAN);
        let w1 = wasserstein1(&xa, &ya).unwrap_or(f64::NAN);
        dist_rows.push(format!("{n},{},{c_hat},{ks},{w1}", xa.len()));
        if ks.is_finite() {
            ctx.out.metric("ks", n.to_string(), ks);
            ctx.out.metric("w1", n.to_string(), w1);
            ks_seen.push(ks);
        }
    }
    if let (Some(first), Some(last)) = (ks_seen.first(), ks_seen.last()) {
        ctx.out.metric("ks_last", "last_n", *last);
        if ks_seen.len() > 1 {
            ctx.out.metric("ks_change", "last_minus_first", last - first);
        }
    }
    ctx.out.table(
        "main_theorem.csv",
        "n,rep,lcs,lcs_rooted,lcs3,ht_a,ht_b,maxdeg_a,maxdeg_b,censored",
        rows,
    );
    ctx.out.table("main_theorem_distances.csv", "n,pairs,c_hat,ks,w1", dist_rows);
    Ok(())
}

fn statistic_name(s: Statistic) -> &'static str {
    match s {
        Statistic::LcsRootedPair => "lcs_rooted_pair",
        Statistic::LcsRootedBiasedPair => "lcs_rooted_biased_pair",
        Statistic::Height => "height",
    }
}

fn rooted_tail(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let stat = ctx.config.options.statistic.unwrap_or(Statistic::LcsRootedPair);
    let grid = ctx.config.options.h_grid.clone().unwrap_or_else(|| DEFAULT_H_GRID.to_vec());
    let samples = ctx.config.samples;
    let seeds = ctx.cell(statistic_name(stat).into(), 0, samples);
    let c = survival_curve(stat, &ctx.law, &ctx.law2, &grid, samples, seeds).map_err(est_err)?;
    ctx.last_cell().censored = c.n_censored;
    let rows = grid
        .iter()
        .zip(c.fitted())
        .map(|(h, &p)| format!("{h},{p},{}", c.stderr(p)))
        .collect();
    ctx.out.table("rooted_tail.csv", "h,survival,stderr", rows);
    let name = statistic_name(stat);
    if let Some(s) = c.slope {
        ctx.out.metric("slope", name, s);
    }
    if samples > 0 && stat == Statistic::Height {
        let h = *grid.last().unwrap() as f64;
        ctx.out.metric("h_times_tail", name, h * c.at_least.last().unwrap());
    }
    Ok(())
}

fn height_vs_lcs(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let eps = ctx.config.options.eps.unwrap_or(0.5);
    let grid = ctx.config.options.p_grid.clone().unwrap_or_else(|| vec![10.0, 20.0, 40.0]);
    let samples = ctx.config.samples;
    let seeds = ctx.cell(format!("p_eps/{eps}"), 0, samples);
    let pts = estimate_p_eps(&ctx.law, &ctx.law2, eps, &grid, samples, seeds).map_err(est_err)?;
    let rows = pts.iter().map(|p| format!("{},{},{},{}", p.h, p.p, p.stderr, p.hits)).collect();
    ctx.out.table("height_vs_lcs.csv", "h,p_eps,stderr,hits", rows);
    if samples > 0 {
        let dec = pts.windows(2).all(|w| w[1].p < w[0].p);
        ctx.out.metric("p_strictly_decreasing", format!("eps={eps}"), dec as u8 as f64);
        let last = pts.last().unwrap();
        ctx.out.metric("p_last_times_h2", format!("h={}", last.h), last.p * last.h * last.h);
    }
    Ok(())
}

fn f_label(f: FSpec) -> String {
    match f {
        FSpec::Const => "const".into(),
        FSpec::CutSize { s } => format!("cut_size_{s}"),
    }
}

fn g_label(g: GSpec) -> String {
    match g {
        GSpec::Const => "const".into(),
        GSpec::Height { h } => format!("height_{h}"),
    }
}

fn many_to_one(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let mut laws = vec![ctx.law.clone()];
    if ctx.law2.spec() != ctx.law.spec() {
        laws.push(ctx.law2.clone());
    }
    let samples = ctx.config.samples;
    let mut rows = Vec::new();
    let mut index = 0;
    for law in &laws {
        let label = law.spec().label();
        for &n in &ctx.config.n_list.clone() {
            for (f, g) in builtin_library() {
                let cell = format!("{label}/{n}/{}/{}", f_label(f), g_label(g));
                let seeds = ctx.cell(cell.clone(), index, samples);
                index += 1;
                let r = many_to_one_check(law, n, f, g, samples, seeds).map_err(est_err)?;
                rows.push(format!(
                    "{label},{n},{},{},{},{},{},{},{}",
                    f_label(f),
                    g_label(g),
                    r.lhs,
                    r.lhs_stderr,
                    r.rhs,
                    r.rhs_stderr,
                    r.rel_error
                ));
                if samples > 0 {
                    ctx.out.metric("rel_error", cell, r.rel_error);
                }
            }
        }
    }
    ctx.out.table("many_to_one.csv", "law,n,f,g,lhs,lhs_stderr,rhs,rhs_stderr,rel_error", rows);
    Ok(())
}

fn big_jumps(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let o = &ctx.config.options;
    let alpha = o.alpha.unwrap_or(0.5);
    let s = o.s.unwrap_or(1.0);
    let m = o.m.unwrap_or(100);
    let t_grid = o.t_grid.clone().unwrap_or_else(|| (2..=8).map(f64::from).collect());
    let step = o.step.clone().unwrap_or(StepLaw::TreeSize {
        law: ctx.config.law.clone(),
    });
    let samples = ctx.config.samples;
    let seeds = ctx.cell(format!("alpha={alpha}/s={s}/m={m}"), 0, samples);
    let r = big_jumps_check(alpha, s, m, &t_grid, &step, samples, seeds).map_err(est_err)?;
    let rows = t_grid
        .iter()
        .zip(r.exceed.iter().zip(&r.stderr))
        .map(|(t, (p, se))| format!("{t},{p},{se}"))
        .collect();
    ctx.out.table("big_jumps.csv", "t,exceed,stderr", rows);
    if let Some(rate) = r.fitted_rate {
        ctx.out.metric("log_slope", format!("target_rate={}", r.target_rate), -rate);
    }
    Ok(())
}

/// `0.1 sqrt(n / ln(n)^λ)`, the degree scale checked for the log-tail law
/// (`λ = 0` for other laws).
pub fn degree_threshold(spec: &LawSpec, n: usize) -> f64 {
    let lambda = match spec {
        LawSpec::Logtail { lambda } => *lambda,
        _ => 0.0,
    };
    let nf = n as f64;
    0.1 * (nf / nf.ln().max(1.0).powf(lambda)).sqrt()
}

/// The height-rearrangement bound at the max-degree vertices of two trees,
/// counting only the child subtrees of each.
fn max_degree_star_bound(a: &PlaneTree, b: &PlaneTree) -> u64 {
    let side = |t: &PlaneTree| {
        let v = t.max_outdegree_vertex();
        let h = t.subtree_heights();
        let mut hs: Vec<usize> = t.children(v).map(|c| h[c]).collect();
        hs.sort_unstable_by(|x, y| y.cmp(x));
        hs
    };
    let (x, y) = (side(a), side(b));
    x.iter().zip(&y).map(|(p, q)| *p.min(q) as u64).sum()
}

fn star_counterexample(ctx: &mut Ctx) -> Result<(), HarnessError> {
    let (law, law2) = (ctx.law.clone(), ctx.law2.clone());
    let samples = ctx.config.samples;
    let mut rows = Vec::new();
    let mut trees = 0u64;
    let mut hits = 0u64;
    for (i, &n) in ctx.config.n_list.clone().iter().enumerate() {
        let seeds = ctx.cell(format!("degrees/{n}"), i as u64, samples);
        let th = degree_threshold(law.spec(), n);
        let th2 = degree_threshold(law2.spec(), n);
        let pairs = replicate_map(seeds, samples, |_, rng| {
            let a = sample_conditioned(&law, n, rng).ok()?;
            let b = sample_conditioned(&law2, n, rng).ok()?;
            Some((a.max_outdegree(), b.max_outdegree(), max_degree_star_bound(&a, &b)))
        });
        let mut failed = 0;
        for (rep, p) in pairs.iter().enumerate() {
            let Some((da, db, bound)) = p else {
                failed += 1;
                continue;
            };
            trees += 2;
            hits += (*da as f64 >= th) as u64 + (*db as f64 >= th2) as u64;
            rows.push(format!("{n},{rep},{da},{db},{th},{bound}"));
        }
        ctx.last_cell().censored = failed;
    }
    ctx.out.table("star_counterexample.csv", "n,rep,maxdeg_a,maxdeg_b,threshold,star_bound", rows);
    if trees > 0 {
        ctx.out.metric("degree_hit_fraction", "all", hits as f64 / trees as f64);
    }
    let mut rows = Vec::new();
    if let Some(delta) = ctx.config.options.delta {
        let reps = ctx.config.options.star_samples.unwrap_or(100);
        let seeds = ctx.cell(format!("star/{delta}"), ctx.config.n_list.len() as u64, reps);
        let r = star_lower_bound(&law, delta, reps, seeds, StarParams::default()).map_err(est_err)?;
        ctx.last_cell().censored = r.n_censored;
        let d = delta as f64;
        let th = 0.5 * d * d.powf(0.25).ln();
        rows.push(format!("{delta},{reps},{},{},{},{},{th}", r.point, r.ci_low, r.ci_high, r.n_censored));
        if reps > 0 {
            ctx.out.metric("star_mean_over_threshold", format!("delta={delta}"), r.point / th);
        }
    }
    ctx.out.table("star_bound.csv", "delta,replicates,mean,ci_low,ci_high,censored,threshold", rows);
    Ok(())
}
