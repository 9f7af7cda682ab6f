//! Generates a hyperbolic random graph, reports the calibrated disk radius,
//! the realized edge count and the fitted degree tail exponent, and writes
//! the edge list to the given path.
//!
//! ```text
//! cargo run --release --example generate_hrg -- 10000 50000 hrg.txt
//! ```

use std::fs::File;
use std::io::BufWriter;

use vaxsim::hrg::{generate_with_radius, tail_exponent, HrgParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().map_or(Ok(10_000), |s| s.parse())?;
    let m = args.next().map_or(Ok(50_000), |s| s.parse())?;
    let out = args.next();

    let params = HrgParams::new(n, m, 42);
    let hrg = generate_with_radius(&params)?;
    let g = &hrg.graph;
    let isolated = (0..g.n()).filter(|&v| g.neighbors(v).is_empty()).count();
    let max_degree = (0..g.n()).map(|v| g.neighbors(v).len()).max().unwrap_or(0);
    println!(
        "R = {:.4}, expected m = {:.0}, realized m = {}",
        hrg.radius,
        hrg.expected_m,
        g.m()
    );
    println!("isolated nodes = {isolated}, max degree = {max_degree}");
    if let Some(b) = tail_exponent(g, 10) {
        println!(
            "tail exponent (degrees >= 10) = {b:.3}, target {}",
            params.exponent_b
        );
    }
    if let Some(path) = out {
        g.write_edge_list(BufWriter::new(File::create(&path)?), false)?;
        println!("wrote {path}");
    }
    Ok(())
}
