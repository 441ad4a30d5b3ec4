//! Run the whole verification suite from an in-memory configuration,
//! then point at the written artifacts. Equivalent to
//! `dirichlet-ops verify --config <file>` with a reduced default config.
//!
//! ```text
//! cargo run --release --example full_suite
//! ```

use dirichlet_ops::config::ExperimentConfig;
use dirichlet_ops::suite::run_suite;

fn main() {
    let mut config = ExperimentConfig::default();
    // a lighter run than the shipped defaults, to finish in a few seconds
    config.corpus.count = 4;
    config.grids.s_grid_points = 15;
    config.grids.lemma1_points = 3;
    config.grids.truncations = vec![64, 256];
    config.grids.mc_samples = 20_000;
    config.grids.carleson_corpus_limit = 1;
    config.output.dir = std::env::temp_dir().join("dirichlet-ops-example-suite");

    let report = run_suite(&config).expect("suite runs");
    print!("{}", report.summary_text());
    println!(
        "artifacts (CSV tables, report.json, summary.txt) in {}",
        config.output.dir.display()
    );
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
