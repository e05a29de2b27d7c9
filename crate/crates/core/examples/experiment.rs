//! A batch run and its summary in a scratch directory.
use treelcs::harness::{run_experiment, summarize, ExperimentConfig};

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig::from_json(&format!(
        r#"{{"scenario":"many_to_one","law":{{"kind":"binary_half"}},"law2":{{"kind":"geometric_half"}},
            "n_list":[1,2],"samples":100000,"master_seed":7,"output_dir":{:?}}}"#,
        dir.path()
    ))
    .unwrap();
    let manifest = run_experiment(&config).unwrap();
    for f in &manifest.files {
        println!("{} {} bytes sha256 {}", f.path, f.bytes, &f.sha256[..16]);
    }
    let report = summarize(dir.path()).unwrap();
    print!("{}", report.render());
    println!("failed: {}", report.failed());
}
