//! Exhaustively checks `OPT_G(k) = OPT_H(k) + n_H + 1` for every connected
//! graph `H` on up to `MAX_N` nodes (default 7) and every `k` with
//! `girth(H) <= k < n_H`.
//!
//! ```text
//! cargo run --release --example verify_reduction -- 6
//! ```

use std::time::Instant;

use vaxsim::hardness::{check_reduction, connected_graphs, girth};

fn main() -> vaxsim::Result<()> {
    let max_n: usize = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("node count"));
    let start = Instant::now();
    let (mut checked, mut failed) = (0, 0);
    for n in 3..=max_n {
        let graphs = connected_graphs(n);
        let mut cases = 0;
        for h in &graphs {
            let Some(g) = girth(h) else { continue };
            for k in g..n {
                let check = check_reduction(h, k)?;
                cases += 1;
                if !check.holds() {
                    failed += 1;
                    println!(
                        "counterexample: edges {:?}, {check:?}",
                        h.edges().collect::<Vec<_>>()
                    );
                }
            }
        }
        println!(
            "n_H = {n}: {} connected graphs, {cases} (H, k) cases",
            graphs.len()
        );
        checked += cases;
    }
    println!(
        "{checked} cases, {failed} failures, {:.1}s",
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
