//! Experiment orchestration: seeded repetitions of strategy × budget sweeps.
//!
//! Each repetition draws one set of disease parameters that every strategy
//! and budget in that repetition shares, and every run in a repetition
//! starts from the same simulation random stream, so strategies are
//! compared on identical draws. Repetitions run in parallel; results are
//! folded in repetition order and do not depend on the thread count.

mod config;
mod report;

pub use config::{parse_hrg_spec, ExperimentConfig};
pub use report::{summarize, to_csv_string, write_csv, CSV_HEADER};

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::epidemic::{initialize_state, DiseaseParams, Simulation, DEFAULT_MAX_ROUNDS};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, Graph};
use crate::hrg::{self, HrgParams};
use crate::strategies::{select_vaccinees, Scorer, StrategyId};

/// Budgets 5%, 10%, ..., 60%.
pub fn default_alphas() -> Vec<f64> {
    (1..=12).map(|i| i as f64 * 0.05).collect()
}

/// Roughly 0.5% of the nodes: 20 for a 4039-node graph, 400 for 81306.
pub fn default_initial_infectious(n: usize) -> usize {
    let half_percent = n as f64 * 0.005;
    if half_percent >= 20.0 {
        ((half_percent / 20.0).floor() * 20.0) as usize
    } else {
        (half_percent.round() as usize).max(1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Dataset {
    EdgeList { path: PathBuf, directed: bool },
    Hrg(HrgParams),
}

impl Dataset {
    pub fn label(&self) -> String {
        match self {
            Dataset::EdgeList { path, .. } => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
            Dataset::Hrg(p) => format!("hrg_n{}_m{}", p.n, p.target_m),
        }
    }

    /// Loads or generates the graph and assigns Jaccard weights.
    pub fn build(&self) -> Result<Graph> {
        let graph = match self {
            Dataset::EdgeList { path, directed } => {
                let file = File::open(path).map_err(|e| Error::io(path, e))?;
                load_edge_list(BufReader::new(file), *directed)?
            }
            Dataset::Hrg(params) => hrg::generate(params)?,
        };
        Ok(graph.jaccard_weights())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub dataset: Dataset,
    pub strategies: Vec<StrategyId>,
    pub alphas: Vec<f64>,
    pub repetitions: usize,
    pub master_seed: u64,
    pub beta: f64,
    pub gamma: f64,
    pub initial_infectious: usize,
    pub max_rounds: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl ExperimentSpec {
    /// All sixteen strategies on the default budget grid with β = 2, γ = 0.6.
    pub fn new(dataset: Dataset, repetitions: usize, initial_infectious: usize) -> Self {
        ExperimentSpec {
            dataset,
            strategies: StrategyId::ALL.to_vec(),
            alphas: default_alphas(),
            repetitions,
            master_seed: 0,
            beta: 2.0,
            gamma: 0.6,
            initial_infectious,
            max_rounds: DEFAULT_MAX_ROUNDS,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return bad(format!("alpha = {a} outside [0, 1]"));
        }
        if self.initial_infectious == 0 {
            return bad("initial_infectious must be at least 1".into());
        }
        if self.max_rounds == 0 {
            return bad("max_rounds must be at least 1".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }
}

/// Aggregate over the repetitions of one `(strategy, α)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    pub strategy: String,
    pub alpha: f64,
    pub mean_survival: f64,
    /// Sample standard deviation of the survivor count, in nodes.
    pub sd_survivors: f64,
    pub reps: usize,
    pub mean_rounds: f64,
}

/// Per-repetition outcomes of one `(strategy, α)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub strategy: StrategyId,
    pub alpha: f64,
    /// Survivors per repetition, in repetition order.
    pub survivors: Vec<usize>,
    pub rounds: Vec<usize>,
    pub truncated: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub dataset: String,
    pub n: usize,
    pub cells: Vec<Cell>,
}

impl Sweep {
    pub fn cell(&self, strategy: StrategyId, alpha: f64) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.strategy == strategy && (c.alpha - alpha).abs() < 1e-12)
    }

    /// Survival ratio per repetition.
    pub fn survival_ratios(&self, strategy: StrategyId, alpha: f64) -> Option<Vec<f64>> {
        self.cell(strategy, alpha).map(|c| {
            c.survivors
                .iter()
                .map(|&s| s as f64 / self.n as f64)
                .collect()
        })
    }

    pub fn rows(&self) -> Vec<ResultRow> {
        self.cells
            .iter()
            .map(|c| {
                let reps = c.survivors.len();
                let mean = c.survivors.iter().sum::<usize>() as f64 / reps as f64;
                let var = if reps > 1 {
                    c.survivors
                        .iter()
                        .map(|&s| (s as f64 - mean).powi(2))
                        .sum::<f64>()
                        / (reps - 1) as f64
                } else {
                    0.0
                };
                ResultRow {
                    dataset: self.dataset.clone(),
                    strategy: c.strategy.name().to_string(),
                    alpha: c.alpha,
                    mean_survival: mean / self.n as f64,
                    sd_survivors: var.sqrt(),
                    reps,
                    mean_rounds: c.rounds.iter().sum::<usize>() as f64 / reps as f64,
                }
            })
            .collect()
    }
}

const STREAM_PARAMS: u64 = 0;
const STREAM_RANDOM_SCORES: u64 = 1;
const STREAM_SIMULATION: u64 = 2;

/// Independent random stream for `(master_seed, repetition, purpose)`.
pub fn substream(master_seed: u64, repetition: usize, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((repetition as u64) << 8) | purpose);
    rng
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let graph = spec.dataset.build()?;
    Ok(run_sweep(&spec.dataset.label(), &graph, spec)?.rows())
}

/// Runs the sweep of `spec` on an already built graph.
pub fn run_sweep(label: &str, graph: &Graph, spec: &ExperimentSpec) -> Result<Sweep> {
    spec.validate()?;
    match spec.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| sweep_in_pool(label, graph, spec)),
        None => sweep_in_pool(label, graph, spec),
    }
}

fn sweep_in_pool(label: &str, graph: &Graph, spec: &ExperimentSpec) -> Result<Sweep> {
    let scorer = Scorer::new(graph);
    scorer.prepare(&spec.strategies)?;

    let per_rep: Vec<Vec<(usize, usize, bool)>> = (0..spec.repetitions)
        .into_par_iter()
        .map(|rep| run_repetition(&scorer, spec, rep))
        .collect::<Result<_>>()?;

    let mut cells: Vec<Cell> = spec
        .strategies
        .iter()
        .flat_map(|&s| {
            spec.alphas.iter().map(move |&alpha| Cell {
                strategy: s,
                alpha,
                survivors: Vec::with_capacity(spec.repetitions),
                rounds: Vec::with_capacity(spec.repetitions),
                truncated: 0,
            })
        })
        .collect();
    for outcomes in per_rep {
        for (cell, (survivors, rounds, truncated)) in cells.iter_mut().zip(outcomes) {
            cell.survivors.push(survivors);
            cell.rounds.push(rounds);
            cell.truncated += truncated as usize;
        }
    }
    let truncated: usize = cells.iter().map(|c| c.truncated).sum();
    if truncated > 0 {
        log::warn!(
            "{truncated} runs hit the limit of {} rounds",
            spec.max_rounds
        );
    }
    Ok(Sweep {
        dataset: label.to_string(),
        n: graph.n(),
        cells,
    })
}

/// Outcomes `(survivors, rounds, truncated)` for every cell, in
/// strategy-major order.
fn run_repetition(
    scorer: &Scorer<'_>,
    spec: &ExperimentSpec,
    rep: usize,
) -> Result<Vec<(usize, usize, bool)>> {
    let graph = scorer.graph();
    let params = DiseaseParams::sample(
        graph,
        spec.beta,
        spec.gamma,
        &mut substream(spec.master_seed, rep, STREAM_PARAMS),
    );
    params.validate()?;
    let mut out = Vec::with_capacity(spec.strategies.len() * spec.alphas.len());
    for &strategy in &spec.strategies {
        let mut score_rng = substream(spec.master_seed, rep, STREAM_RANDOM_SCORES);
        let scores = scorer.score(strategy, &params, &mut score_rng)?;
        for &alpha in &spec.alphas {
            let plan = select_vaccinees(&scores, alpha)?;
            let mut sim_rng = substream(spec.master_seed, rep, STREAM_SIMULATION);
            let st0 = initialize_state(graph, &plan.nodes, spec.initial_infectious, &mut sim_rng)?;
            let outcome = Simulation::new(graph, &params, st0)?.run(&mut sim_rng, spec.max_rounds);
            out.push((outcome.survivors(), outcome.rounds, outcome.truncated));
        }
    }
    Ok(out)
}
