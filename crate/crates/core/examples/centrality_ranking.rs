//! Top nodes of a hyperbolic random graph under each structural strategy,
//! with and without Jaccard weights.

use vaxsim::centrality::EigenOptions;
use vaxsim::hrg::{self, HrgParams};
use vaxsim::strategies::{Scorer, StrategyId};

fn main() -> vaxsim::Result<()> {
    let graph = hrg::generate(&HrgParams::new(1000, 4000, 3))?.jaccard_weights();
    let scorer = Scorer::new(&graph).with_eigen_options(EigenOptions {
        tol: 1e-10,
        max_iter: 10_000,
    });
    for id in StrategyId::ALL.into_iter().filter(|id| id.is_structural()) {
        let scores = scorer.structural(id)?;
        let top: Vec<String> = scores
            .descending()
            .into_iter()
            .take(8)
            .map(|v| format!("{v}({:.3})", scores.values[v]))
            .collect();
        println!("{:<13} {}", id.name(), top.join(" "));
    }
    Ok(())
}
