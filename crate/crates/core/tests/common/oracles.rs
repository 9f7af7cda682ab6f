use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vaxsim::centrality::Weighting;
use vaxsim::epidemic::DiseaseParams;
use vaxsim::Graph;

pub const GRAPHS: usize = 100;

pub fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * 1f64.max(a.abs()).max(b.abs())
}

pub fn lengths(g: &Graph, weighting: Weighting) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for (u, v, w) in g.edges() {
        let len = match weighting {
            Weighting::Unweighted => 1.0,
            Weighting::Weighted => 1.0 - w,
        };
        d[u][v] = len;
        d[v][u] = len;
    }
    d
}

pub fn floyd_warshall(g: &Graph, weighting: Weighting) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = lengths(g, weighting);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn closeness_oracle(g: &Graph, weighting: Weighting) -> Vec<f64> {
    let n = g.n();
    let d = floyd_warshall(g, weighting);
    (0..n)
        .map(|v| {
            let reach: Vec<f64> = d[v].iter().copied().filter(|x| x.is_finite()).collect();
            let r = (reach.len() - 1) as f64;
            let total: f64 = reach.iter().sum();
            if total > 0.0 && n > 1 {
                (r / total) * (r / (n - 1) as f64)
            } else {
                0.0
            }
        })
        .collect()
}

/// Enumerates every simple s-t path no longer than the shortest one; among
/// those of minimum length, only the ones with the fewest hops count.
pub fn betweenness_oracle(g: &Graph, weighting: Weighting) -> Vec<f64> {
    let n = g.n();
    let len = lengths(g, weighting);
    let dist = floyd_warshall(g, weighting);
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if !dist[s][t].is_finite() {
                continue;
            }
            let mut shortest: Vec<Vec<usize>> = Vec::new();
            let mut path = vec![s];
            let mut on_path = vec![false; n];
            on_path[s] = true;
            collect_paths(
                g,
                &len,
                dist[s][t],
                t,
                0.0,
                &mut path,
                &mut on_path,
                &mut shortest,
            );
            let min_hops = shortest.iter().map(Vec::len).min().unwrap();
            let fewest: Vec<&Vec<usize>> =
                shortest.iter().filter(|p| p.len() == min_hops).collect();
            let sigma = fewest.len() as f64;
            for p in &fewest {
                for &v in &p[1..p.len() - 1] {
                    b[v] += 1.0 / sigma;
                }
            }
        }
    }
    b
}

#[allow(clippy::too_many_arguments)]
fn collect_paths(
    g: &Graph,
    len: &[Vec<f64>],
    target_len: f64,
    t: usize,
    so_far: f64,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let v = *path.last().unwrap();
    if v == t {
        if same(so_far, target_len) {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(v) {
        let next = so_far + len[v][w];
        if on_path[w] || (next > target_len && !same(next, target_len)) {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        collect_paths(g, len, target_len, t, next, path, on_path, out);
        path.pop();
        on_path[w] = false;
    }
}

pub fn eigen_oracle(g: &Graph, weighting: Weighting) -> (Vec<f64>, f64) {
    let n = g.n();
    let a = super::dense_weights(g, weighting == Weighting::Weighted);
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let eig = SymmetricEigen::new(m);
    let top = eig.eigenvalues.imax();
    let mut x: Vec<f64> = eig.eigenvectors.column(top).iter().copied().collect();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    (x, eig.eigenvalues[top])
}

/// Largest absolute difference between two score vectors.
pub fn max_deviation(got: &[f64], want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

pub fn assert_close(label: &str, got: &[f64], want: &[f64], tol: f64, case: usize) {
    for (v, (a, b)) in got.iter().zip(want).enumerate() {
        assert!(
            (a - b).abs() <= tol,
            "{label}, graph {case}, node {v}: {a} vs {b}"
        );
    }
}

/// 100 graphs per family: n in 2..=10, densities spread over (0.15, 0.85).
pub fn families() -> Vec<(&'static str, Vec<Graph>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut jaccard = Vec::new();
    let mut quarter = Vec::new();
    for i in 0..GRAPHS {
        let n = 2 + i % 9;
        let p = 0.15 + 0.7 * rng.random::<f64>();
        jaccard.push(super::gnp(&mut rng, n, p));
        quarter.push(super::gnp_quarter_weights(&mut rng, n, p));
    }
    vec![("jaccard", jaccard), ("quarter", quarter)]
}

/// Dense weights and weighted degrees, for direct-summation oracles of the
/// disease-aware scores.
pub struct Dense {
    pub w: Vec<Vec<f64>>,
    pub s: Vec<f64>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        let w = super::dense_weights(g, true);
        let s = w.iter().map(|row| row.iter().sum()).collect();
        Dense { w, s }
    }

    /// `Σ_{u ∈ N(v)} term(u, ω(v,u))`.
    pub fn over_neighbors(&self, v: usize, term: impl Fn(usize, f64) -> f64) -> f64 {
        (0..self.w.len())
            .filter(|&u| self.w[v][u] > 0.0)
            .map(|u| term(u, self.w[v][u]))
            .sum()
    }

    pub fn nd(&self, p: &DiseaseParams, v: usize) -> f64 {
        self.over_neighbors(v, |u, _| p.omega_d[u])
    }

    pub fn wnd(&self, p: &DiseaseParams, v: usize) -> f64 {
        self.over_neighbors(v, |u, w| w * p.omega_d[u])
    }

    fn spread(&self, p: &DiseaseParams, v: usize) -> f64 {
        self.over_neighbors(v, |u, w| w * p.omega_d[u] / self.s[u])
    }

    pub fn ef1(&self, p: &DiseaseParams, v: usize) -> f64 {
        self.spread(p, v) + p.omega_d[v]
    }

    pub fn ef2(&self, p: &DiseaseParams, v: usize) -> f64 {
        self.spread(p, v) + 1.0 - p.omega_d[v] - p.gamma * p.omega_r[v]
    }

    pub fn ef3(&self, p: &DiseaseParams, v: usize) -> f64 {
        self.over_neighbors(v, |u, w| {
            w * p.omega_d[u] * p.omega_i[u] * (1.0 - p.omega_d[v]) / self.s[u]
        })
    }
}

/// 200 graphs with n in 1..=8 and sampled disease parameters.
pub fn strategy_fixtures() -> Vec<(Graph, DiseaseParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    (0..200)
        .map(|i| {
            let n = 1 + i % 8;
            let density = rng.random_range(0.1..0.9);
            let g = super::gnp(&mut rng, n, density);
            let p = DiseaseParams::sample(&g, 2.0, 0.6, &mut rng);
            (g, p)
        })
        .collect()
}
