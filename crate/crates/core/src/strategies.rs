//! Vaccination scorers and top-`⌊αn⌋` selection.
//!
//! Every strategy assigns a score to each node; the nodes with the highest
//! scores are vaccinated. None of the scorers look at the epidemic state.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;

use crate::centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, eigenvector_centrality,
    EigenOptions, ScoreVector, Weighting,
};
use crate::epidemic::DiseaseParams;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyId {
    Random,
    Degree,
    WeightedDegree,
    Eigenvector,
    WeightedEigenvector,
    Closeness,
    WeightedCloseness,
    Betweenness,
    WeightedBetweenness,
    Death,
    NeighborsDeath,
    WeightedNeighborsDeath,
    ExpectedFatality1,
    ExpectedFatality2,
    ExpectedFatality3,
    Hybrid,
}

impl StrategyId {
    pub const ALL: [StrategyId; 16] = [
        StrategyId::Random,
        StrategyId::Degree,
        StrategyId::WeightedDegree,
        StrategyId::Eigenvector,
        StrategyId::WeightedEigenvector,
        StrategyId::Closeness,
        StrategyId::WeightedCloseness,
        StrategyId::Betweenness,
        StrategyId::WeightedBetweenness,
        StrategyId::Death,
        StrategyId::NeighborsDeath,
        StrategyId::WeightedNeighborsDeath,
        StrategyId::ExpectedFatality1,
        StrategyId::ExpectedFatality2,
        StrategyId::ExpectedFatality3,
        StrategyId::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyId::Random => "random",
            StrategyId::Degree => "degree",
            StrategyId::WeightedDegree => "wdegree",
            StrategyId::Eigenvector => "eigen",
            StrategyId::WeightedEigenvector => "weigen",
            StrategyId::Closeness => "closeness",
            StrategyId::WeightedCloseness => "wcloseness",
            StrategyId::Betweenness => "betweenness",
            StrategyId::WeightedBetweenness => "wbetweenness",
            StrategyId::Death => "death",
            StrategyId::NeighborsDeath => "ndeath",
            StrategyId::WeightedNeighborsDeath => "wndeath",
            StrategyId::ExpectedFatality1 => "ef1",
            StrategyId::ExpectedFatality2 => "ef2",
            StrategyId::ExpectedFatality3 => "ef3",
            StrategyId::Hybrid => "hybrid",
        }
    }

    /// Scores depend only on the graph, not on disease parameters or RNG.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            StrategyId::Degree
                | StrategyId::WeightedDegree
                | StrategyId::Eigenvector
                | StrategyId::WeightedEigenvector
                | StrategyId::Closeness
                | StrategyId::WeightedCloseness
                | StrategyId::Betweenness
                | StrategyId::WeightedBetweenness
        )
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrategyId::ALL
            .into_iter()
            .find(|id| id.name() == s.trim())
            .ok_or_else(|| Error::UnknownStrategy(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VaccinationPlan {
    pub nodes: Vec<usize>,
    pub alpha: f64,
}

/// Picks the `⌊α·n⌋` highest-scoring nodes, ties by ascending id.
pub fn select_vaccinees(scores: &ScoreVector, alpha: f64) -> Result<VaccinationPlan> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} outside [0, 1]"
        )));
    }
    let k = budget(scores.len(), alpha);
    let mut nodes = scores.descending();
    nodes.truncate(k);
    Ok(VaccinationPlan { nodes, alpha })
}

/// `⌊α·n⌋`, tolerant of the representation error in grid values like 0.35.
pub fn budget(n: usize, alpha: f64) -> usize {
    ((alpha * n as f64 + 1e-9).floor() as usize).min(n)
}

pub fn death_score(p: &DiseaseParams) -> ScoreVector {
    ScoreVector::new("death", p.omega_d.clone())
}

/// `nd(v) = Σ_{u∈N(v)} ω_d(u)`.
pub fn neighbors_death(g: &Graph, p: &DiseaseParams) -> ScoreVector {
    let values = (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&u| p.omega_d[u]).sum())
        .collect();
    ScoreVector::new("ndeath", values)
}

/// `wnd(v) = Σ_{u∈N(v)} ω(v,u)·ω_d(u)`.
pub fn weighted_neighbors_death(g: &Graph, p: &DiseaseParams) -> ScoreVector {
    let values = (0..g.n())
        .map(|v| g.adjacent(v).map(|(u, w)| w * p.omega_d[u]).sum())
        .collect();
    ScoreVector::new("wndeath", values)
}

/// `Σ_{u∈N(v)} ω(v,u)·f(u) / W(u)` where `W(u)` is the weighted degree of
/// `u`, i.e. the share of `u`'s infection pressure that `v` would supply.
fn spread_to_neighbors(g: &Graph, mut f: impl FnMut(usize) -> f64) -> Vec<f64> {
    let wdeg: Vec<f64> = (0..g.n())
        .map(|u| g.neighbor_weights(u).iter().sum())
        .collect();
    (0..g.n())
        .map(|v| g.adjacent(v).map(|(u, w)| w * f(u) / wdeg[u]).sum())
        .collect()
}

/// Expected deaths `v` causes among its neighbors plus its own death rate.
pub fn expected_fatality_1(g: &Graph, p: &DiseaseParams) -> ScoreVector {
    let mut values = spread_to_neighbors(g, |u| p.omega_d[u]);
    for (v, x) in values.iter_mut().enumerate() {
        *x += p.omega_d[v];
    }
    ScoreVector::new("ef1", values)
}

/// Like [`expected_fatality_1`] with the own term replaced by the chance of
/// staying infectious, `1 - ω_d(v) - γ·ω_r(v)`.
pub fn expected_fatality_2(g: &Graph, p: &DiseaseParams) -> ScoreVector {
    let mut values = spread_to_neighbors(g, |u| p.omega_d[u]);
    for (v, x) in values.iter_mut().enumerate() {
        *x += 1.0 - p.omega_d[v] - p.gamma * p.omega_r[v];
    }
    ScoreVector::new("ef2", values)
}

/// Neighbor deaths weighted by the neighbor's susceptibility and by the
/// spreader surviving, `(1 - ω_d(v))`.
pub fn expected_fatality_3(g: &Graph, p: &DiseaseParams) -> ScoreVector {
    let mut values = spread_to_neighbors(g, |u| p.omega_d[u] * p.omega_i[u]);
    for (v, x) in values.iter_mut().enumerate() {
        *x *= 1.0 - p.omega_d[v];
    }
    ScoreVector::new("ef3", values)
}

/// Equal-weight rank fusion: `-(rank_b(v) + rank_ef3(v))`, so the node with
/// the smallest rank sum scores highest.
pub fn hybrid_from_scores(betweenness: &ScoreVector, ef3: &ScoreVector) -> ScoreVector {
    let values = betweenness
        .ranks()
        .into_iter()
        .zip(ef3.ranks())
        .map(|(a, b)| -((a + b) as f64))
        .collect();
    ScoreVector::new("hybrid", values)
}

pub fn hybrid_score(g: &Graph, p: &DiseaseParams) -> ScoreVector {
    hybrid_from_scores(
        &betweenness_centrality(g, Weighting::Unweighted),
        &expected_fatality_3(g, p),
    )
}

/// Computes strategy scores on one graph, caching the structural ones
/// (centralities) across calls.
pub struct Scorer<'g> {
    graph: &'g Graph,
    eigen: EigenOptions,
    structural: [OnceLock<Result<ScoreVector, String>>; 8],
}

impl<'g> Scorer<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Scorer {
            graph,
            eigen: EigenOptions::default(),
            structural: Default::default(),
        }
    }

    pub fn with_eigen_options(mut self, eigen: EigenOptions) -> Self {
        self.eigen = eigen;
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Computes every structural score needed by `ids` up front.
    pub fn prepare(&self, ids: &[StrategyId]) -> Result<()> {
        for &id in ids {
            match id {
                StrategyId::Hybrid => {
                    self.structural(StrategyId::Betweenness)?;
                }
                id if id.is_structural() => {
                    self.structural(id)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn structural(&self, id: StrategyId) -> Result<&ScoreVector> {
        let slot = match id {
            StrategyId::Degree => 0,
            StrategyId::WeightedDegree => 1,
            StrategyId::Eigenvector => 2,
            StrategyId::WeightedEigenvector => 3,
            StrategyId::Closeness => 4,
            StrategyId::WeightedCloseness => 5,
            StrategyId::Betweenness => 6,
            StrategyId::WeightedBetweenness => 7,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "{other} depends on disease parameters"
                )))
            }
        };
        let g = self.graph;
        let cached = self.structural[slot].get_or_init(|| {
            log::debug!("computing {id} scores");
            let scores = match id {
                StrategyId::Degree => Ok(degree_centrality(g, Weighting::Unweighted)),
                StrategyId::WeightedDegree => Ok(degree_centrality(g, Weighting::Weighted)),
                StrategyId::Eigenvector => {
                    eigenvector_centrality(g, Weighting::Unweighted, self.eigen)
                }
                StrategyId::WeightedEigenvector => {
                    eigenvector_centrality(g, Weighting::Weighted, self.eigen)
                }
                StrategyId::Closeness => Ok(closeness_centrality(g, Weighting::Unweighted)),
                StrategyId::WeightedCloseness => Ok(closeness_centrality(g, Weighting::Weighted)),
                StrategyId::Betweenness => Ok(betweenness_centrality(g, Weighting::Unweighted)),
                StrategyId::WeightedBetweenness => {
                    Ok(betweenness_centrality(g, Weighting::Weighted))
                }
                _ => unreachable!(),
            };
            scores.map_err(|e| e.to_string())
        });
        cached
            .as_ref()
            .map_err(|msg| Error::InvalidParameter(format!("{id}: {msg}")))
    }

    pub fn score<R: Rng + ?Sized>(
        &self,
        id: StrategyId,
        p: &DiseaseParams,
        rng: &mut R,
    ) -> Result<ScoreVector> {
        let g = self.graph;
        Ok(match id {
            StrategyId::Random => {
                ScoreVector::new("random", (0..g.n()).map(|_| rng.random::<f64>()).collect())
            }
            StrategyId::Death => death_score(p),
            StrategyId::NeighborsDeath => neighbors_death(g, p),
            StrategyId::WeightedNeighborsDeath => weighted_neighbors_death(g, p),
            StrategyId::ExpectedFatality1 => expected_fatality_1(g, p),
            StrategyId::ExpectedFatality2 => expected_fatality_2(g, p),
            StrategyId::ExpectedFatality3 => expected_fatality_3(g, p),
            StrategyId::Hybrid => hybrid_from_scores(
                self.structural(StrategyId::Betweenness)?,
                &expected_fatality_3(g, p),
            ),
            structural => self.structural(structural)?.clone(),
        })
    }
}

/// Scores `g` with strategy `id`. Deterministic except for
/// [`StrategyId::Random`], which draws i.i.d. uniform scores from `rng`.
pub fn score<R: Rng + ?Sized>(
    id: StrategyId,
    g: &Graph,
    p: &DiseaseParams,
    rng: &mut R,
) -> Result<ScoreVector> {
    Scorer::new(g).score(id, p, rng)
}
