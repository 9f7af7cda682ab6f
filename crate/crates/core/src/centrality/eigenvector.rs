use super::{ScoreVector, Weighting};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    /// Convergence threshold on the max-norm change between iterates.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-8,
            max_iter: 10_000,
        }
    }
}

/// Principal eigenvector of the (weighted) adjacency matrix, unit Euclidean
/// norm, non-negative.
///
/// Iterates with `A + I` rather than `A`: same eigenvectors, but the shift
/// keeps bipartite graphs (stars, paths, trees) from oscillating between
/// the `±λ` eigenvectors.
pub fn eigenvector_centrality(
    g: &Graph,
    weighting: Weighting,
    opts: EigenOptions,
) -> Result<ScoreVector> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "eigenvector centrality of an empty graph".into(),
        ));
    }
    let label = match weighting {
        Weighting::Unweighted => "eigen",
        Weighting::Weighted => "weigen",
    };
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        for v in 0..n {
            let mut acc = x[v];
            match weighting {
                Weighting::Unweighted => {
                    for &u in g.neighbors(v) {
                        acc += x[u];
                    }
                }
                Weighting::Weighted => {
                    for (u, w) in g.adjacent(v) {
                        acc += w * x[u];
                    }
                }
            }
            y[v] = acc;
        }
        let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        residual = 0.0;
        for (yv, xv) in y.iter_mut().zip(&x) {
            *yv /= norm;
            residual = f64::max(residual, (*yv - xv).abs());
        }
        std::mem::swap(&mut x, &mut y);
        if residual < opts.tol {
            return Ok(ScoreVector::new(label, x));
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn triangle_is_uniform() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap().0;
        let x = eigenvector_centrality(&g, Weighting::Unweighted, EigenOptions::default()).unwrap();
        for v in x.values {
            assert_relative_eq!(v, 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn star_center_dominates() {
        let g = Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap().0;
        let x = eigenvector_centrality(&g, Weighting::Unweighted, EigenOptions::default()).unwrap();
        // exact: center 1/√2, leaves 1/(2√2)
        assert_relative_eq!(x.values[0], 0.5f64.sqrt(), epsilon = 1e-7);
        for l in 1..5 {
            assert!(x.values[0] > x.values[l]);
            assert_relative_eq!(x.values[l], x.values[1], epsilon = 1e-12);
        }
    }

    #[test]
    fn non_convergence_reports_residual() {
        let g = Graph::from_edges(6, (0..5).map(|i| (i, i + 1))).unwrap().0;
        let opts = EigenOptions {
            tol: 1e-14,
            max_iter: 2,
        };
        match eigenvector_centrality(&g, Weighting::Unweighted, opts) {
            Err(Error::NonConvergence {
                iterations: 2,
                residual,
            }) => assert!(residual > 0.0),
            other => panic!("{other:?}"),
        }
        assert!(eigenvector_centrality(
            &Graph::from_edges(0, []).unwrap().0,
            Weighting::Unweighted,
            opts
        )
        .is_err());
    }
}
