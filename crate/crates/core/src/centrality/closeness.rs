use rayon::prelude::*;

use super::paths::SingleSource;
use super::{in_locality_order, ScoreVector, Weighting};
use crate::graph::Graph;

/// Closeness scaled by component size:
/// `c(v) = ((r-1) / Σ d(v,u)) · ((r-1) / (n-1))` over the `r` nodes reachable
/// from `v` (including `v`). On a connected graph this is `(n-1) / Σ d(v,u)`.
/// Isolated nodes, and nodes whose reachable distances are all zero, score 0.
pub fn closeness_centrality(g: &Graph, weighting: Weighting) -> ScoreVector {
    let n = g.n();
    let label = match weighting {
        Weighting::Unweighted => "closeness",
        Weighting::Weighted => "wcloseness",
    };
    let values = in_locality_order(g, |g| {
        (0..n)
            .into_par_iter()
            .map_init(
                || SingleSource::new(g, weighting),
                |sp, v| {
                    sp.run(v);
                    let total: f64 = sp.order.iter().map(|&u| sp.dist[u]).sum();
                    let reach = (sp.order.len() - 1) as f64;
                    if total > 0.0 && n > 1 {
                        (reach / total) * (reach / (n - 1) as f64)
                    } else {
                        0.0
                    }
                },
            )
            .collect()
    });
    ScoreVector::new(label, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn path_hand_values() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap().0;
        let c = closeness_centrality(&g, Weighting::Unweighted).values;
        assert_relative_eq!(c[1], 1.0);
        assert_relative_eq!(c[0], 2.0 / 3.0);
        let w = closeness_centrality(&g.jaccard_weights(), Weighting::Weighted).values;
        assert_relative_eq!(w[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn isolated_and_disconnected() {
        // path 0-1-2 plus isolated 3
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap().0;
        let c = closeness_centrality(&g, Weighting::Unweighted).values;
        assert_eq!(c[3], 0.0);
        assert_relative_eq!(c[1], 1.0 * (2.0 / 3.0));
        // zero-length edge: all reachable distances vanish
        let e = Graph::from_edges(2, [(0, 1)]).unwrap().0;
        assert_eq!(
            closeness_centrality(&e, Weighting::Weighted).values,
            vec![0.0, 0.0]
        );
    }
}
