//! Paired comparison of every strategy on a small hyperbolic random graph:
//! all strategies share the disease draws and simulation streams of each
//! repetition, so differences are measured on identical outbreaks.

use vaxsim::harness::{run_sweep, summarize, Dataset, ExperimentSpec};
use vaxsim::hrg::HrgParams;
use vaxsim::strategies::StrategyId;

fn main() -> vaxsim::Result<()> {
    let dataset = Dataset::Hrg(HrgParams::new(1000, 8000, 11));
    let graph = dataset.build()?;
    let mut spec = ExperimentSpec::new(dataset.clone(), 30, 5);
    spec.alphas = vec![0.0, 0.1, 0.3];
    spec.master_seed = 2024;
    let sweep = run_sweep(&dataset.label(), &graph, &spec)?;
    print!("{}", summarize(&sweep.rows()));

    let baseline = sweep.survival_ratios(StrategyId::Random, 0.1).unwrap();
    println!("\npaired gain over random at alpha = 0.1:");
    for id in StrategyId::ALL {
        let ratios = sweep.survival_ratios(id, 0.1).unwrap();
        let diffs: Vec<f64> = ratios.iter().zip(&baseline).map(|(a, b)| a - b).collect();
        let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
        let sd = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (diffs.len() - 1) as f64)
            .sqrt();
        println!(
            "  {:<13} {:+.4} ± {:.4}",
            id.name(),
            mean,
            sd / (diffs.len() as f64).sqrt()
        );
    }
    Ok(())
}
