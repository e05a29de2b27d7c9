use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use treelcs::estimators::{
    big_jumps_check, estimate_c, estimate_p_eps, many_to_one_check, star_lower_bound, survival_curve, FSpec, GSpec,
    LcsSampling, StarParams, StepLaw, Statistic,
};
use treelcs::harness::{run_experiment, summarize, ExperimentConfig};
use treelcs::lcs::{lcs3_length, lcs_rooted_witness, lcs_unrooted_witness};
use treelcs::samplers::{sample_bgw, sample_conditioned, sample_root_biased, sample_spine, DEFAULT_CAP};
use treelcs::trees::{parse, serialize, ParentsJson};
use treelcs::{LawSpec, PlaneTree, Seeds};

/// Like `print!`, but a closed stdout (e.g. `| head`) ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = write!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    };
}

#[derive(Parser)]
#[command(name = "treelcs", version, about = "Random Bienaymé trees and their largest common subtrees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw trees and print them one per line.
    Sample(SampleArgs),
    /// Largest common subtrees of two trees given in paren form (or `@file`).
    Lcs(LcsArgs),
    /// Run one Monte-Carlo estimator.
    Estimate(EstimateArgs),
    /// Batch experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleKind {
    Bgw,
    Conditioned,
    RootBiased,
    Spine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Paren,
    Parents,
}

#[derive(Args)]
struct SampleArgs {
    /// Law label (`geometric_half`, `d_ary_3`, `logtail_1.5`, ...) or JSON.
    #[arg(long, default_value = "geometric_half")]
    law: LawSpec,
    #[arg(long, value_enum, default_value = "conditioned")]
    kind: SampleKind,
    /// Size for `conditioned`, spine height for `spine`.
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "paren")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum LcsMode {
    Rooted,
    Unrooted,
    Tripod,
    All,
}

#[derive(Args)]
struct LcsArgs {
    a: String,
    b: String,
    #[arg(long, value_enum, default_value = "all")]
    mode: LcsMode,
    /// Include one optimal embedding as matched vertex pairs.
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    C,
    Tail,
    PEps,
    M2o,
    BigJumps,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatArg {
    LcsRootedPair,
    LcsRootedBiasedPair,
    Height,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, default_value = "geometric_half")]
    law: LawSpec,
    /// Second law (defaults to `--law`).
    #[arg(long)]
    law2: Option<LawSpec>,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for `<what>.csv` and `<what>.json`; CSV goes to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `tail`: statistic.
    #[arg(long, value_enum, default_value = "lcs-rooted-pair")]
    statistic: StatArg,
    /// `tail` and `p-eps`: comma-separated grid.
    #[arg(long, value_delimiter = ',')]
    grid: Vec<f64>,
    /// `p-eps`: exponent.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// `m2o`: level.
    #[arg(long, default_value_t = 2)]
    level: usize,
    /// `m2o`: cap S for F = min(#Cut_u, S); constant F when absent.
    #[arg(long)]
    cut_size: Option<usize>,
    /// `m2o`: cap H for G = min(Ht(θ_u), H); constant G when absent.
    #[arg(long)]
    height_cap: Option<usize>,
    /// `big-jumps`: tail index, scale, walk length; steps are tree sizes
    /// under `--law` unless `--pareto`.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    #[arg(long, default_value_t = 100)]
    m: u64,
    #[arg(long)]
    pareto: bool,
    /// `star`: branches per star.
    #[arg(long, default_value_t = 100)]
    delta: usize,
    /// `c`: depth at which trees are cut.
    #[arg(long, default_value_t = 1000)]
    max_depth: usize,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run a JSON config.
    Run {
        config: PathBuf,
        /// Override the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check a finished run against the expectations file.
    Summarize { dir: PathBuf },
}

type Res<T> = Result<T, String>;

fn read_tree(arg: &str) -> Res<PlaneTree> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => arg.to_string(),
    };
    parse(text.trim()).map_err(|e| e.to_string())
}

fn cmd_sample(a: SampleArgs) -> Res<()> {
    let law = a.law.build().map_err(|e| e.to_string())?;
    let seeds = Seeds::new(a.seed);
    for i in 0..a.count {
        let mut rng = seeds.stream(i);
        let t = match a.kind {
            SampleKind::Bgw => sample_bgw(&law, &mut rng, a.cap),
            SampleKind::Conditioned => sample_conditioned(&law, a.n, &mut rng),
            SampleKind::RootBiased => sample_root_biased(&law, &mut rng, a.cap),
            SampleKind::Spine => sample_spine(&law, a.n, &mut rng, a.cap).map(|s| s.tree),
        }
        .map_err(|e| e.to_string())?;
        match a.format {
            Format::Paren => out!("{}\n", serialize(&t)),
            Format::Parents => out!("{}\n", serde_json::to_string(&ParentsJson::from(&t)).unwrap()),
        }
    }
    Ok(())
}

#[derive(Serialize, Default)]
struct LcsOut {
    size_a: usize,
    size_b: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    lcs_rooted: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lcs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lcs3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_rooted: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<(usize, usize)>>,
}

fn cmd_lcs(a: LcsArgs) -> Res<()> {
    let (t, u) = (read_tree(&a.a)?, read_tree(&a.b)?);
    let mut out = LcsOut {
        size_a: t.size(),
        size_b: u.size(),
        ..LcsOut::default()
    };
    let all = a.mode == LcsMode::All;
    if all || a.mode == LcsMode::Rooted {
        let (v, w) = lcs_rooted_witness(&t, &u).map_err(|e| e.to_string())?;
        out.lcs_rooted = Some(v);
        out.witness_rooted = a.witness.then_some(w);
    }
    if all || a.mode == LcsMode::Unrooted {
        let (v, w) = lcs_unrooted_witness(&t, &u).map_err(|e| e.to_string())?;
        out.lcs = Some(v);
        out.witness = a.witness.then_some(w);
    }
    if all || a.mode == LcsMode::Tripod {
        out.lcs3 = Some(lcs3_length(&t, &u, 1.0, 1.0));
    }
    out!("{}\n", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

fn emit(out: &Option<PathBuf>, name: &str, header: &str, rows: Vec<String>, json: &impl Serialize) -> Res<()> {
    let mut csv = format!("{header}\n");
    for r in rows {
        csv.push_str(&r);
        csv.push('\n');
    }
    let json = serde_json::to_string_pretty(json).unwrap();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| e.to_string())?;
            let w = |p: &Path, s: &str| fs::write(p, s).map_err(|e| format!("{}: {e}", p.display()));
            w(&dir.join(format!("{name}.csv")), &csv)?;
            w(&dir.join(format!("{name}.json")), &json)?;
        }
        None => {
            out!("{csv}");
            eprintln!("{json}");
        }
    }
    Ok(())
}

fn cmd_estimate(a: EstimateArgs) -> Res<()> {
    let s = |e: treelcs::estimators::EstimatorError| e.to_string();
    let law = a.law.build().map_err(|e| e.to_string())?;
    let law2 = a.law2.as_ref().unwrap_or(&a.law).build().map_err(|e| e.to_string())?;
    let seeds = Seeds::new(a.seed);
    match a.what {
        What::C => {
            let limits = LcsSampling {
                max_depth: a.max_depth,
                ..LcsSampling::default()
            };
            let r = estimate_c(&law, &law2, a.samples, seeds, limits).map_err(s)?;
            let row = format!("{},{},{},{},{}", r.point, r.ci_low, r.ci_high, r.n_samples, r.n_censored);
            emit(&a.out, "c", "point,ci_low,ci_high,n_samples,n_censored", vec![row], &r)
        }
        What::Tail => {
            let stat = match a.statistic {
                StatArg::LcsRootedPair => Statistic::LcsRootedPair,
                StatArg::LcsRootedBiasedPair => Statistic::LcsRootedBiasedPair,
                StatArg::Height => Statistic::Height,
            };
            let grid: Vec<usize> = if a.grid.is_empty() {
                vec![10, 20, 40, 80]
            } else {
                a.grid.iter().map(|&h| h as usize).collect()
            };
            let c = survival_curve(stat, &law, &law2, &grid, a.samples, seeds).map_err(s)?;
            let rows = grid.iter().zip(c.fitted()).map(|(h, &p)| format!("{h},{p},{}", c.stderr(p))).collect();
            #[derive(Serialize)]
            struct TailJson<'a> {
                statistic: Statistic,
                slope: Option<f64>,
                n_samples: u64,
                n_censored: u64,
                grid: &'a [usize],
                exceed: &'a [f64],
                at_least: &'a [f64],
            }
            let j = TailJson {
                statistic: stat,
                slope: c.slope,
                n_samples: c.n_samples,
                n_censored: c.n_censored,
                grid: &c.grid,
                exceed: &c.exceed,
                at_least: &c.at_least,
            };
            emit(&a.out, "tail", "h,survival,stderr", rows, &j)
        }
        What::PEps => {
            let grid = if a.grid.is_empty() { vec![10.0, 20.0, 40.0] } else { a.grid.clone() };
            let pts = estimate_p_eps(&law, &law2, a.eps, &grid, a.samples, seeds).map_err(s)?;
            let rows = pts.iter().map(|p| format!("{},{},{},{}", p.h, p.p, p.stderr, p.hits)).collect();
            emit(&a.out, "p_eps", "h,p_eps,stderr,hits", rows, &pts)
        }
        What::M2o => {
            let f = a.cut_size.map_or(FSpec::Const, |s| FSpec::CutSize { s });
            let g = a.height_cap.map_or(GSpec::Const, |h| GSpec::Height { h });
            let r = many_to_one_check(&law, a.level, f, g, a.samples, seeds).map_err(s)?;
            let row = format!(
                "{},{},{},{},{},{}",
                r.n, r.lhs, r.lhs_stderr, r.rhs, r.rhs_stderr, r.rel_error
            );
            emit(&a.out, "m2o", "n,lhs,lhs_stderr,rhs,rhs_stderr,rel_error", vec![row], &r)
        }
        What::BigJumps => {
            let grid = if a.grid.is_empty() { (2..=8).map(f64::from).collect() } else { a.grid.clone() };
            let step = if a.pareto { StepLaw::SymmetricPareto } else { StepLaw::TreeSize { law: a.law.clone() } };
            let r = big_jumps_check(a.alpha, a.s, a.m, &grid, &step, a.samples, seeds).map_err(s)?;
            let rows = grid
                .iter()
                .zip(r.exceed.iter().zip(&r.stderr))
                .map(|(t, (p, se))| format!("{t},{p},{se}"))
                .collect();
            emit(&a.out, "big_jumps", "t,exceed,stderr", rows, &r)
        }
        What::Star => {
            let r = star_lower_bound(&law, a.delta, a.samples, seeds, StarParams::default()).map_err(s)?;
            let row = format!("{},{},{},{},{}", a.delta, r.point, r.ci_low, r.ci_high, r.n_censored);
            emit(&a.out, "star", "delta,mean,ci_low,ci_high,censored", vec![row], &r)
        }
    }
}

fn cmd_experiment(c: ExperimentCmd) -> Res<bool> {
    match c {
        ExperimentCmd::Run { config, out, workers } => {
            let text = fs::read_to_string(&config).map_err(|e| format!("{}: {e}", config.display()))?;
            let mut cfg = ExperimentConfig::from_json(&text).map_err(|e| e.to_string())?;
            if let Some(o) = out {
                cfg.output_dir = o;
            }
            if workers.is_some() {
                cfg.workers = workers;
            }
            let m = run_experiment(&cfg).map_err(|e| e.to_string())?;
            for cell in m.cells.iter().filter(|c| c.error.is_some()) {
                eprintln!("cell {}: {}", cell.name, cell.error.as_deref().unwrap_or(""));
            }
            out!("wrote {} files to {}\n", m.files.len(), cfg.output_dir.display());
            Ok(true)
        }
        ExperimentCmd::Summarize { dir } => {
            let r = summarize(&dir).map_err(|e| e.to_string())?;
            out!("{}", r.render());
            Ok(!r.failed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a).map(|_| true),
        Command::Lcs(a) => cmd_lcs(a).map(|_| true),
        Command::Estimate(a) => cmd_estimate(a).map(|_| true),
        Command::Experiment(c) => cmd_experiment(c),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
