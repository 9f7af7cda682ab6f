//! Runs a sweep described in TOML and writes the CSV report.
//!
//! ```text
//! cargo run --release --example sweep_to_csv -- sweep.toml results.csv
//! ```
//!
//! Without arguments an inline configuration is used and the CSV goes to
//! stdout.

use std::fs::File;
use std::io::{self, BufWriter};

use vaxsim::harness::{run_sweep, write_csv, ExperimentConfig};

const INLINE: &str = r#"
hrg = "n=2000,m=10000,seed=5"
strategies = ["random", "degree", "betweenness", "ef3", "hybrid"]
alphas = [0.05, 0.15, 0.30]
reps = 20
seed = 1
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = match args.next() {
        Some(path) => ExperimentConfig::load(path.as_ref())?,
        None => ExperimentConfig::from_toml_str(INLINE)?,
    };
    let dataset = config.dataset()?;
    let graph = dataset.build()?;
    let spec = config.to_spec(graph.n())?;
    let rows = run_sweep(&dataset.label(), &graph, &spec)?.rows();
    match args.next().or(config.out.map(|p| p.display().to_string())) {
        Some(path) => write_csv(&rows, BufWriter::new(File::create(path)?))?,
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}
