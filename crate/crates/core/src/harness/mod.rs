//! Batch experiments: a JSON config in, CSV tables plus a manifest out.
//!
//! Every CSV payload is a function of the config alone. Cells draw from
//! `Seeds::new(master_seed).lane(scenario).lane(cell)`, and all reductions
//! are scheduling-independent, so the worker count never changes a byte.
//! The manifest is written last; a directory without one is an
//! incomplete run.

mod config;
mod scenarios;
mod summary;

pub use config::{ExperimentConfig, Scenario, ScenarioOptions};
pub use summary::{expectations, summarize, Expectation, Report, ReportRow};

use crate::estimators::EstimateResult;
use crate::rng::Seeds;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};
use thiserror::Error;

pub const MANIFEST_NAME: &str = "manifest.json";
/// Environment variable naming the worker count when the config has none.
pub const WORKERS_ENV: &str = "TREELCS_WORKERS";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("no {MANIFEST_NAME} in {0}")]
    MissingManifest(PathBuf),
    #[error("malformed json in {path}: {message}")]
    Json { path: PathBuf, message: String },
}

pub(crate) fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// One unit of work with its own seed lane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub name: String,
    pub seeds: Seeds,
    pub samples: u64,
    pub censored: u64,
    /// Set when the cell hit a resource limit; the run carried on.
    pub error: Option<String>,
}

/// A scalar checked by `summarize` against the expectations file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub cell: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileRecord {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: ExperimentConfig,
    pub tool_version: String,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub workers: usize,
    pub cells: Vec<CellRecord>,
    pub metrics: Vec<Metric>,
    /// The ĉ estimate used by `main_theorem`.
    pub c_hat: Option<EstimateResult>,
    pub files: Vec<FileRecord>,
}

/// Accumulates a run's outputs before they are committed to disk.
#[derive(Default)]
pub(crate) struct RunOutput {
    pub tables: Vec<(String, String)>,
    pub cells: Vec<CellRecord>,
    pub metrics: Vec<Metric>,
    pub c_hat: Option<EstimateResult>,
}

impl RunOutput {
    pub fn table(&mut self, name: &str, header: &str, rows: Vec<String>) {
        let mut s = String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
        s.push_str(header);
        s.push('\n');
        for r in rows {
            s.push_str(&r);
            s.push('\n');
        }
        self.tables.push((name.to_string(), s));
    }

    pub fn metric(&mut self, name: &str, cell: impl Into<String>, value: f64) {
        self.metrics.push(Metric {
            name: name.to_string(),
            cell: cell.into(),
            value,
        });
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Write via a temporary sibling and rename.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Worker count: the config's hint, else `TREELCS_WORKERS`, else all cores.
pub fn resolve_workers(config: &ExperimentConfig) -> usize {
    config
        .workers
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&w| w > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Runs the configured scenario and writes its tables and manifest into
/// `config.output_dir`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunManifest, HarnessError> {
    config.validate()?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let manifest_path = dir.join(MANIFEST_NAME);
    if manifest_path.exists() {
        fs::remove_file(&manifest_path).map_err(io_err(&manifest_path))?;
    }
    let started = now();
    let workers = resolve_workers(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    let out = pool.install(|| scenarios::run(config))?;

    let mut files = Vec::with_capacity(out.tables.len());
    for (name, body) in &out.tables {
        let path = dir.join(name);
        write_atomic(&path, body.as_bytes())?;
        files.push(FileRecord {
            path: name.clone(),
            bytes: body.len() as u64,
            sha256: sha256_hex(body.as_bytes()),
        });
    }
    let manifest = RunManifest {
        config: config.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        started_unix: started,
        finished_unix: now(),
        workers,
        cells: out.cells,
        metrics: out.metrics,
        c_hat: out.c_hat,
        files,
    };
    let json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    write_atomic(&manifest_path, &json)?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<RunManifest, HarnessError> {
    let path = dir.join(MANIFEST_NAME);
    if !path.is_file() {
        return Err(HarnessError::MissingManifest(dir.to_path_buf()));
    }
    let bytes = fs::read(&path).map_err(io_err(&path))?;
    serde_json::from_slice(&bytes).map_err(|e| HarnessError::Json {
        path,
        message: e.to_string(),
    })
}

/// Re-runs the config recorded in `dir`'s manifest into `output_dir`.
pub fn rerun(dir: &Path, output_dir: &Path, workers: Option<usize>) -> Result<RunManifest, HarnessError> {
    let mut config = read_manifest(dir)?.config;
    config.output_dir = output_dir.to_path_buf();
    config.workers = workers.or(config.workers);
    run_experiment(&config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offspring::LawSpec;

    fn config(scenario: Scenario, dir: &Path, n_list: Vec<usize>, samples: u64) -> ExperimentConfig {
        ExperimentConfig {
            scenario,
            law: LawSpec::GeometricHalf,
            law2: None,
            n_list,
            samples,
            master_seed: 42,
            workers: Some(1),
            output_dir: dir.to_path_buf(),
            options: ScenarioOptions::default(),
        }
    }

    fn payloads(dir: &Path, m: &RunManifest) -> Vec<(String, Vec<u8>)> {
        m.files.iter().map(|f| (f.path.clone(), fs::read(dir.join(&f.path)).unwrap())).collect()
    }

    #[test]
    fn empty_main_theorem_run() {
        let tmp = tempfile::tempdir().unwrap();
        let m = run_experiment(&config(Scenario::MainTheorem, tmp.path(), vec![16], 0)).unwrap();
        let body = fs::read_to_string(tmp.path().join("main_theorem.csv")).unwrap();
        assert_eq!(body, "n,rep,lcs,lcs_rooted,lcs3,ht_a,ht_b,maxdeg_a,maxdeg_b,censored\n");
        assert!(m.c_hat.is_none());
        let report = summarize(tmp.path()).unwrap();
        assert!(!report.failed());
        assert!(report.rows.is_empty());
        for f in &m.files {
            let bytes = fs::read(tmp.path().join(&f.path)).unwrap();
            assert_eq!(sha256_hex(&bytes), f.sha256);
        }
    }

    #[test]
    fn payloads_independent_of_workers() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let mut c = config(Scenario::MainTheorem, a.path(), vec![9, 17], 12);
        c.options.c_samples = Some(300);
        let ma = run_experiment(&c).unwrap();
        let mb = rerun(a.path(), b.path(), Some(3)).unwrap();
        assert_eq!(payloads(a.path(), &ma), payloads(b.path(), &mb));
        assert_eq!(ma.c_hat, mb.c_hat);
        let ra = summarize(a.path()).unwrap().render();
        assert_eq!(ra, summarize(b.path()).unwrap().render());
        assert!(ra.contains("main_theorem,ks,9,"));
    }

    #[test]
    fn missing_manifest_is_refused() {
        let tmp = tempfile::tempdir().unwrap();
        assert!(matches!(summarize(tmp.path()), Err(HarnessError::MissingManifest(_))));
        fs::write(tmp.path().join("main_theorem.csv"), "partial").unwrap();
        assert!(matches!(summarize(tmp.path()), Err(HarnessError::MissingManifest(_))));
    }

    #[test]
    fn failing_threshold_is_flagged() {
        let tmp = tempfile::tempdir().unwrap();
        let mut m = run_experiment(&config(Scenario::MainTheorem, tmp.path(), vec![16], 0)).unwrap();
        m.metrics.push(Metric {
            name: "ks_last".into(),
            cell: "last_n".into(),
            value: 0.4,
        });
        fs::write(tmp.path().join(MANIFEST_NAME), serde_json::to_vec(&m).unwrap()).unwrap();
        let r = summarize(tmp.path()).unwrap();
        assert!(r.failed());
        assert!(r.render().contains("main_theorem,ks_last,last_n,0.4,< 0.15,FAIL"));
    }

    #[test]
    fn small_scenarios_run() {
        let tmp = tempfile::tempdir().unwrap();
        let mut c = config(Scenario::SamplerValidation, tmp.path(), vec![1, 2, 3, 4], 4000);
        run_experiment(&c).unwrap();
        let r = summarize(tmp.path()).unwrap();
        assert_eq!(r.rows.iter().filter(|x| x.metric == "tv").count(), 4);

        c.scenario = Scenario::LcsOracle;
        c.n_list = vec![4, 8];
        c.samples = 20;
        run_experiment(&c).unwrap();
        let r = summarize(tmp.path()).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].value, 0.0);
        assert!(!r.failed());

        c.scenario = Scenario::ManyToOne;
        c.n_list = vec![1];
        c.samples = 2000;
        run_experiment(&c).unwrap();
        let body = fs::read_to_string(tmp.path().join("many_to_one.csv")).unwrap();
        assert_eq!(body.lines().count(), 5);

        c.scenario = Scenario::BigJumps;
        c.samples = 1000;
        run_experiment(&c).unwrap();
        c.scenario = Scenario::RootedTail;
        c.options.h_grid = Some(vec![2, 4, 8]);
        run_experiment(&c).unwrap();
        c.scenario = Scenario::HeightVsLcs;
        run_experiment(&c).unwrap();
        c.scenario = Scenario::StarCounterexample;
        c.n_list = vec![50];
        c.samples = 5;
        c.options.delta = Some(20);
        c.options.star_samples = Some(5);
        let m = run_experiment(&c).unwrap();
        assert!(m.metrics.iter().any(|x| x.name == "star_mean_over_threshold"));
    }

    #[test]
    fn worker_resolution() {
        let tmp = tempfile::tempdir().unwrap();
        let mut c = config(Scenario::LcsOracle, tmp.path(), vec![], 0);
        assert_eq!(resolve_workers(&c), 1);
        c.workers = None;
        assert!(resolve_workers(&c) >= 1);
    }
}
