use super::paths::SingleSource;
use super::{accumulate_over_sources, in_locality_order, ScoreVector, Weighting};
use crate::graph::Graph;

/// Unnormalized betweenness over unordered pairs:
/// `b(v) = Σ_{s<t, s≠v≠t} σ_st(v) / σ_st`.
///
/// Brandes' dependency accumulation, one search per source. Predecessors are
/// recomputed from adjacency instead of stored, which keeps memory at O(n)
/// per worker.
pub fn betweenness_centrality(g: &Graph, weighting: Weighting) -> ScoreVector {
    let n = g.n();
    let label = match weighting {
        Weighting::Unweighted => "betweenness",
        Weighting::Weighted => "wbetweenness",
    };
    let mut values = in_locality_order(g, |g| match weighting {
        Weighting::Unweighted => {
            let init = || HopScratch {
                hops: vec![u32::MAX; n],
                order: Vec::with_capacity(n),
                sigma: vec![0.0; n],
                delta: vec![0.0; n],
            };
            accumulate_over_sources(n, init, |scratch, s, acc| scratch.accumulate(g, s, acc))
        }
        Weighting::Weighted => {
            let init = || Scratch {
                paths: SingleSource::new(g, weighting),
                sigma: vec![0.0; n],
                delta: vec![0.0; n],
            };
            accumulate_over_sources(n, init, |scratch, s, acc| scratch.accumulate(s, acc))
        }
    });
    // every unordered pair was visited from both ends
    for b in &mut values {
        *b /= 2.0;
    }
    ScoreVector::new(label, values)
}

struct Scratch<'g> {
    paths: SingleSource<'g>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
}

impl Scratch<'_> {
    fn accumulate(&mut self, s: usize, acc: &mut [f64]) {
        let sp = &mut self.paths;
        sp.run(s);
        let g = sp.graph();
        let (sigma, delta) = (&mut self.sigma, &mut self.delta);

        for &w in &sp.order {
            sigma[w] = 0.0;
            delta[w] = 0.0;
        }
        sigma[s] = 1.0;
        for &w in &sp.order[1..] {
            let mut count = 0.0;
            for (v, weight) in g.adjacent(w) {
                if sp.is_predecessor(v, w, weight) {
                    count += sigma[v];
                }
            }
            sigma[w] = count;
        }
        for &w in sp.order[1..].iter().rev() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            for (v, weight) in g.adjacent(w) {
                if sp.is_predecessor(v, w, weight) {
                    delta[v] += sigma[v] * coeff;
                }
            }
            acc[w] += delta[w];
        }
    }
}

/// Hop-count search with path counting folded into the BFS; `order` is
/// also the queue.
struct HopScratch {
    hops: Vec<u32>,
    order: Vec<usize>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
}

impl HopScratch {
    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        let (hops, order, sigma, delta) = (
            &mut self.hops,
            &mut self.order,
            &mut self.sigma,
            &mut self.delta,
        );
        for &v in order.iter() {
            hops[v] = u32::MAX;
        }
        order.clear();
        hops[s] = 0;
        sigma[s] = 1.0;
        delta[s] = 0.0;
        order.push(s);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let next = hops[v] + 1;
            for &w in g.neighbors(v) {
                if hops[w] == u32::MAX {
                    hops[w] = next;
                    sigma[w] = 0.0;
                    delta[w] = 0.0;
                    order.push(w);
                }
                if hops[w] == next {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order[1..].iter().rev() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            let before = hops[w] - 1;
            for &v in g.neighbors(w) {
                if hops[v] == before {
                    delta[v] += sigma[v] * coeff;
                }
            }
            acc[w] += delta[w];
        }
    }
}
