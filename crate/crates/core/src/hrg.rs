//! Hyperbolic random graphs with a prescribed node count and (expected)
//! edge count.
//!
//! Nodes get an angle uniform on `[0, 2π)` and a radius with density
//! proportional to `sinh(α·r)` on `[0, R]`, where `α = (b - 1) / 2` sets the
//! power-law exponent `b` of the degree distribution. Each pair connects
//! independently with probability `1 / (1 + exp((d - R) / (2T)))`, `d` being
//! the hyperbolic distance. The disk radius `R` is calibrated so that the
//! expected number of edges matches the target.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HrgParams {
    pub n: usize,
    pub target_m: usize,
    pub exponent_b: f64,
    pub temperature: f64,
    pub seed: u64,
}

impl HrgParams {
    /// Power-law exponent 2.5 and temperature 0.6.
    pub fn new(n: usize, target_m: usize, seed: u64) -> Self {
        HrgParams {
            n,
            target_m,
            exponent_b: 2.5,
            temperature: 0.6,
            seed,
        }
    }

    /// Radial dispersion `α = (b - 1) / 2`.
    pub fn alpha(&self) -> f64 {
        (self.exponent_b - 1.0) / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n < 2 {
            return bad(format!("n = {} must be at least 2", self.n));
        }
        let pairs = self.n as u128 * (self.n as u128 - 1) / 2;
        if self.target_m == 0 || self.target_m as u128 > pairs {
            return bad(format!("target_m = {} outside [1, {pairs}]", self.target_m));
        }
        if self.exponent_b.is_nan() || self.exponent_b <= 2.0 {
            return bad(format!("exponent b = {} must exceed 2", self.exponent_b));
        }
        if !(self.temperature > 0.0 && self.temperature < 1.0) {
            return bad(format!(
                "temperature T = {} outside (0, 1)",
                self.temperature
            ));
        }
        Ok(())
    }
}

/// Generated graph together with its calibrated disk radius.
#[derive(Clone, Debug)]
pub struct HrgGraph {
    pub graph: Graph,
    pub radius: f64,
    /// Expected edge count for the sampled coordinates at `radius`.
    pub expected_m: f64,
}

pub fn generate(params: &HrgParams) -> Result<Graph> {
    generate_with_radius(params).map(|h| h.graph)
}

pub fn generate_with_radius(params: &HrgParams) -> Result<HrgGraph> {
    params.validate()?;
    let latent = Latent::sample(params);
    let calibration = Calibration::new(&latent, params);
    let (radius, expected_m) = calibration.solve()?;
    let coords = latent.at_radius(radius);
    let edges = sample_edges(&coords, radius, params);
    log::info!(
        "hyperbolic graph: n={} R={radius:.4} expected m={expected_m:.0} realized m={}",
        params.n,
        edges.len()
    );
    Ok(HrgGraph {
        graph: Graph::from_simple_edges(params.n, &edges),
        radius,
        expected_m,
    })
}

/// Angles and radial quantiles; radii follow once `R` is fixed.
struct Latent {
    alpha: f64,
    theta: Vec<f64>,
    quantile: Vec<f64>,
}

impl Latent {
    fn sample(params: &HrgParams) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut theta = Vec::with_capacity(params.n);
        let mut quantile = Vec::with_capacity(params.n);
        for _ in 0..params.n {
            theta.push(rng.random::<f64>() * TAU);
            quantile.push(rng.random::<f64>());
        }
        Latent {
            alpha: params.alpha(),
            theta,
            quantile,
        }
    }

    /// Inverts the radial CDF `(cosh(αr) - 1) / (cosh(αR) - 1)`.
    fn at_radius(&self, radius: f64) -> Coords {
        let span = (self.alpha * radius).cosh() - 1.0;
        let mut c = Coords::default();
        for (&theta, &q) in self.theta.iter().zip(&self.quantile) {
            let r = (1.0 + q * span).acosh() / self.alpha;
            let e = r.exp();
            c.exp_r.push(e);
            c.sinh_r.push(r.sinh());
            c.half_cos.push((theta / 2.0).cos());
            c.half_sin.push((theta / 2.0).sin());
        }
        c
    }
}

#[derive(Default)]
struct Coords {
    exp_r: Vec<f64>,
    sinh_r: Vec<f64>,
    half_cos: Vec<f64>,
    half_sin: Vec<f64>,
}

impl Coords {
    /// Hyperbolic distance via
    /// `cosh d = cosh(r_u - r_v) + 2 sinh r_u sinh r_v sin²(Δθ/2)`,
    /// which avoids the cancellation in the textbook form for large radii.
    #[inline]
    fn distance(&self, u: usize, v: usize) -> f64 {
        let ratio = self.exp_r[u] / self.exp_r[v];
        let cosh_diff = 0.5 * (ratio + 1.0 / ratio);
        let s = self.half_sin[u] * self.half_cos[v] - self.half_cos[u] * self.half_sin[v];
        let x = cosh_diff + 2.0 * self.sinh_r[u] * self.sinh_r[v] * s * s;
        (x + (x * x - 1.0).max(0.0).sqrt()).ln()
    }
}

#[inline]
fn connect_probability(d: f64, radius: f64, temperature: f64) -> f64 {
    1.0 / (1.0 + ((d - radius) / (2.0 * temperature)).exp())
}

fn sample_edges(coords: &Coords, radius: f64, params: &HrgParams) -> Vec<(usize, usize, f64)> {
    let n = params.n;
    let rows: Vec<Vec<(usize, usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(u as u64 + 1);
            let mut row = Vec::new();
            for v in (u + 1)..n {
                let p = connect_probability(coords.distance(u, v), radius, params.temperature);
                if rng.random::<f64>() < p {
                    row.push((u, v, 1.0));
                }
            }
            row
        })
        .collect();
    rows.concat()
}

/// Pair sets larger than this are estimated from a fixed random subset.
const EXACT_PAIR_LIMIT: u64 = 20_000_000;
const SAMPLED_PAIRS: usize = 4_000_000;
/// Relative error at which the radius search stops.
const CALIBRATION_TOLERANCE: f64 = 0.002;

struct Calibration<'a> {
    latent: &'a Latent,
    params: &'a HrgParams,
    /// `None` means every pair is summed.
    pairs: Option<Vec<(u32, u32)>>,
    scale: f64,
}

impl<'a> Calibration<'a> {
    fn new(latent: &'a Latent, params: &'a HrgParams) -> Self {
        let n = params.n as u64;
        let total = n * (n - 1) / 2;
        if total <= EXACT_PAIR_LIMIT {
            return Calibration {
                latent,
                params,
                pairs: None,
                scale: 1.0,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(0x4341_4c49_4252_4154);
        let pairs: Vec<(u32, u32)> = (0..SAMPLED_PAIRS)
            .map(|_| loop {
                let u = rng.random_range(0..params.n);
                let v = rng.random_range(0..params.n);
                if u != v {
                    break (u as u32, v as u32);
                }
            })
            .collect();
        Calibration {
            latent,
            params,
            pairs: Some(pairs),
            scale: total as f64 / SAMPLED_PAIRS as f64,
        }
    }

    /// Expected edge count given the sampled angles and quantiles.
    fn expected_edges(&self, radius: f64) -> f64 {
        let coords = self.latent.at_radius(radius);
        let t = self.params.temperature;
        let n = self.params.n;
        let sum: f64 = match &self.pairs {
            None => (0..n)
                .into_par_iter()
                .map(|u| {
                    ((u + 1)..n)
                        .map(|v| connect_probability(coords.distance(u, v), radius, t))
                        .sum::<f64>()
                })
                .collect::<Vec<f64>>()
                .into_iter()
                .sum(),
            Some(pairs) => pairs
                .par_chunks(1 << 16)
                .map(|chunk| {
                    chunk
                        .iter()
                        .map(|&(u, v)| {
                            connect_probability(coords.distance(u as usize, v as usize), radius, t)
                        })
                        .sum::<f64>()
                })
                .collect::<Vec<f64>>()
                .into_iter()
                .sum(),
        };
        sum * self.scale
    }

    /// Initial guess from the large-n average degree
    /// `k ≈ (2 ξ² n T / sin(πT)) e^{-R/2}` with `ξ = α / (α - 1/2)`.
    fn initial_radius(&self) -> f64 {
        let p = self.params;
        let alpha = p.alpha();
        let xi = alpha / (alpha - 0.5);
        let k = 2.0 * p.target_m as f64 / p.n as f64;
        let guess = 2.0
            * (2.0 * xi * xi * p.n as f64 * p.temperature / (k * (PI * p.temperature).sin())).ln();
        guess.max(1.0)
    }

    fn solve(&self) -> Result<(f64, f64)> {
        let target = self.params.target_m as f64;
        let f = |r: f64| self.expected_edges(r);

        // expected edges fall as the radius grows; bracket the target
        let r0 = self.initial_radius();
        let m0 = f(r0);
        let (mut lo, mut m_lo, mut hi, mut m_hi);
        if m0 >= target {
            (lo, m_lo) = (r0, m0);
            let mut step = 1.0;
            loop {
                hi = lo + step;
                m_hi = f(hi);
                if m_hi < target {
                    break;
                }
                (lo, m_lo) = (hi, m_hi);
                step *= 2.0;
            }
        } else {
            (hi, m_hi) = (r0, m0);
            let mut best = m0;
            let mut step = 1.0;
            loop {
                lo = (hi - step).max(0.0);
                m_lo = f(lo);
                best = best.max(m_lo);
                if m_lo >= target {
                    break;
                }
                if lo == 0.0 {
                    // scan for the largest achievable expectation
                    for i in 1..=64 {
                        best = best.max(f(r0 * i as f64 / 64.0));
                    }
                    return Err(Error::Calibration {
                        target: self.params.target_m,
                        min: 0.0,
                        max: best,
                    });
                }
                (hi, m_hi) = (lo, m_lo);
                step *= 2.0;
            }
        }

        // Illinois-style regula falsi on ln(m)
        let g = |m: f64| m.max(f64::MIN_POSITIVE).ln() - target.ln();
        let (mut g_lo, mut g_hi) = (g(m_lo), g(m_hi));
        let mut best = if g_lo.abs() < g_hi.abs() {
            (lo, m_lo)
        } else {
            (hi, m_hi)
        };
        let mut side = 0i8;
        for _ in 0..100 {
            if ((best.1 - target) / target).abs() < CALIBRATION_TOLERANCE || hi - lo < 1e-12 {
                break;
            }
            let mut r = hi - g_hi * (hi - lo) / (g_hi - g_lo);
            if !(r > lo && r < hi) {
                r = 0.5 * (lo + hi);
            }
            let m = f(r);
            let gm = g(m);
            if (m - target).abs() < (best.1 - target).abs() {
                best = (r, m);
            }
            if gm > 0.0 {
                (lo, g_lo) = (r, gm);
                if side == -1 {
                    g_hi /= 2.0;
                }
                side = -1;
            } else {
                (hi, g_hi) = (r, gm);
                if side == 1 {
                    g_lo /= 2.0;
                }
                side = 1;
            }
        }
        Ok(best)
    }
}

/// Maximum-likelihood exponent of a discrete power-law tail over the
/// degrees `>= min_degree`, using the continuous approximation
/// `1 + k / Σ ln(d_i / (d_min - 1/2))`. `None` when fewer than two degrees
/// qualify.
pub fn tail_exponent(g: &Graph, min_degree: usize) -> Option<f64> {
    let shift = min_degree as f64 - 0.5;
    let tail: Vec<f64> = (0..g.n())
        .map(|v| g.neighbors(v).len())
        .filter(|&d| d >= min_degree && d > 0)
        .map(|d| (d as f64 / shift).ln())
        .collect();
    if tail.len() < 2 {
        return None;
    }
    Some(1.0 + tail.len() as f64 / tail.iter().sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_matches_textbook_formula() {
        let params = HrgParams::new(50, 100, 9);
        let latent = Latent::sample(&params);
        let radius = 6.0;
        let c = latent.at_radius(radius);
        for u in 0..10 {
            assert_eq!(c.distance(u, u), 0.0);
            for v in (0..10).filter(|&v| v != u) {
                let ru = (c.exp_r[u]).ln();
                let rv = (c.exp_r[v]).ln();
                let dtheta = latent.theta[u] - latent.theta[v];
                let cosh_d = ru.cosh() * rv.cosh() - ru.sinh() * rv.sinh() * dtheta.cos();
                let expected = cosh_d.max(1.0).acosh();
                assert!((c.distance(u, v) - expected).abs() < 1e-6, "{u} {v}");
            }
        }
    }

    #[test]
    fn radii_stay_in_disk() {
        let params = HrgParams::new(1000, 3000, 2);
        let c = Latent::sample(&params).at_radius(12.0);
        assert!(c.exp_r.iter().all(|&e| e >= 1.0 && e.ln() <= 12.0 + 1e-9));
    }

    #[test]
    fn node_count_exact_and_seed_deterministic() {
        let params = HrgParams::new(300, 900, 5);
        let a = generate(&params).unwrap();
        let b = generate(&params).unwrap();
        assert_eq!(a.n(), 300);
        assert_eq!(a, b);
        let c = generate(&HrgParams { seed: 6, ..params }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn unreachable_target_reports_range() {
        match generate(&HrgParams::new(10, 45, 1)) {
            Err(Error::Calibration {
                target: 45,
                min,
                max,
            }) => {
                assert_eq!(min, 0.0);
                assert!(max > 0.0 && max < 45.0, "{max}");
            }
            other => panic!("{other:?}"),
        }
        let small = generate(&HrgParams::new(10, 12, 1)).unwrap();
        assert_eq!(small.n(), 10);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(generate(&HrgParams::new(1, 1, 0)).is_err());
        assert!(generate(&HrgParams::new(10, 46, 0)).is_err());
        assert!(generate(&HrgParams {
            exponent_b: 2.0,
            ..HrgParams::new(10, 5, 0)
        })
        .is_err());
        assert!(generate(&HrgParams {
            temperature: 1.0,
            ..HrgParams::new(10, 5, 0)
        })
        .is_err());
    }
}
