//! Structural node scores: degree, eigenvector, closeness and betweenness,
//! each with an unweighted and an edge-weighted form.

mod betweenness;
mod closeness;
mod eigenvector;
pub(crate) mod paths;

pub use betweenness::betweenness_centrality;
pub use closeness::closeness_centrality;
pub use eigenvector::{eigenvector_centrality, EigenOptions};

use rayon::prelude::*;

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weighting {
    Unweighted,
    /// Edge weights ω enter directly (degree, eigenvector) or as lengths
    /// `1 - ω` (closeness, betweenness).
    Weighted,
}

/// One real score per node, tagged with the name of what produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub label: String,
}

impl ScoreVector {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        ScoreVector {
            values,
            label: label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ordinal ranks starting at 1 for the highest score; ties are ordered
    /// by ascending node id.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.len()];
        for (pos, v) in self.descending().into_iter().enumerate() {
            ranks[v] = pos + 1;
        }
        ranks
    }

    /// Node ids sorted by descending score, ties by ascending id.
    pub fn descending(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]).then(a.cmp(&b)));
        order
    }
}

pub fn degree_centrality(g: &Graph, weighting: Weighting) -> ScoreVector {
    let values = (0..g.n())
        .map(|v| match weighting {
            Weighting::Unweighted => g.neighbors(v).len() as f64,
            Weighting::Weighted => g.neighbor_weights(v).iter().sum(),
        })
        .collect();
    let label = match weighting {
        Weighting::Unweighted => "degree",
        Weighting::Weighted => "wdegree",
    };
    ScoreVector::new(label, values)
}

/// Computes per-node values on a copy of `g` relabeled in breadth-first
/// order and maps them back. Neighbors then sit close together in memory,
/// which speeds up the all-sources searches on large graphs.
pub(crate) fn in_locality_order(g: &Graph, compute: impl FnOnce(&Graph) -> Vec<f64>) -> Vec<f64> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let relabeled =
        Graph::from_weighted_edges(n, g.edges().map(|(u, v, w)| (position[u], position[v], w)))
            .expect("relabeling a valid graph")
            .0;
    let values = compute(&relabeled);
    position.iter().map(|&new| values[new]).collect()
}

/// Fixed number of contiguous source blocks, so per-node sums are reduced
/// in the same order whatever the thread count.
const SOURCE_BLOCKS: usize = 64;

/// Runs `per_source` for every node, each block of sources accumulating into
/// its own vector, and sums the blocks in index order.
pub(crate) fn accumulate_over_sources<S, I, F>(n: usize, init: I, per_source: F) -> Vec<f64>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, usize, &mut [f64]) + Sync,
{
    if n == 0 {
        return Vec::new();
    }
    let block = n.div_ceil(SOURCE_BLOCKS);
    let partials: Vec<Vec<f64>> = (0..n)
        .step_by(block)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|start| {
            let mut scratch = init();
            let mut acc = vec![0.0; n];
            for s in start..(start + block).min(n) {
                per_source(&mut scratch, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}
