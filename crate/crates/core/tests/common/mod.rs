#![allow(dead_code)]

pub mod oracles;
pub mod process;

use rand::Rng;
use vaxsim::Graph;

/// G(n, p) with Jaccard weights.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap().0.jaccard_weights()
}

/// G(n, p) with weights drawn from {0.25, 0.5, 0.75, 1}, so that equal-length
/// paths are frequent and sums are exact in floating point.
pub fn gnp_quarter_weights<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v, rng.random_range(1..=4) as f64 / 4.0));
            }
        }
    }
    Graph::from_weighted_edges(n, edges).unwrap().0
}

pub fn connected(g: &Graph) -> bool {
    vaxsim::hardness::is_connected(g)
}

pub fn dense_weights(g: &Graph, weighted: bool) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut a = vec![vec![0.0; n]; n];
    for (u, v, w) in g.edges() {
        let w = if weighted { w } else { 1.0 };
        a[u][v] = w;
        a[v][u] = w;
    }
    a
}
