//! Loads a SNAP edge list, assigns Jaccard weights and writes the weighted
//! edge list back out.
//!
//! ```text
//! cargo run --example load_graph -- data/facebook_combined.txt
//! ```
//!
//! Without an argument a small inline sample is used.

use std::fs::File;
use std::io::{self, BufReader};

use vaxsim::graph::load_edge_list_with_report;

const SAMPLE: &str = "\
# FromNodeId\tToNodeId
10 20
20 30
30 10
30 40
40 30
40 40
50 40
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (graph, report) = match std::env::args().nth(1) {
        Some(path) => load_edge_list_with_report(BufReader::new(File::open(path)?), false)?,
        None => load_edge_list_with_report(SAMPLE.as_bytes(), true)?,
    };
    eprintln!(
        "n = {}, m = {} ({} self-loops, {} duplicates, {} reciprocal pairs dropped)",
        graph.n(),
        graph.m(),
        report.self_loops,
        report.duplicates,
        report.reciprocal
    );
    let weighted = graph.jaccard_weights();
    for v in 0..weighted.n().min(5) {
        eprintln!(
            "node {}: degree {}, weighted degree {:.4}",
            weighted.label(v),
            weighted.degree(v)?,
            weighted.weighted_degree(v)?
        );
    }
    weighted.write_edge_list(io::stdout().lock(), true)?;
    Ok(())
}
