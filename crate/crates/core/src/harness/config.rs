use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{default_initial_infectious, Dataset, ExperimentSpec};
use crate::epidemic::DEFAULT_MAX_ROUNDS;
use crate::error::{Error, Result};
use crate::hrg::HrgParams;
use crate::strategies::StrategyId;

/// Experiment settings as read from TOML; every field is optional so that a
/// file and command-line flags can be layered with [`merge`](Self::merge).
///
/// Keys are the long command-line flag names:
///
/// ```toml
/// graph = "data/facebook_combined.txt"   # or: hrg = "n=4039,m=88234,seed=7"
/// strategies = ["random", "betweenness", "hybrid"]
/// alphas = [0.05, 0.10, 0.30]
/// reps = 100
/// seed = 42
/// init-infected = 20
/// out = "results.csv"
/// ```
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub graph: Option<PathBuf>,
    pub directed: Option<bool>,
    pub hrg: Option<String>,
    pub strategies: Option<Vec<String>>,
    pub alphas: Option<Vec<f64>>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub init_infected: Option<usize>,
    pub max_rounds: Option<usize>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Fields set in `over` replace those in `self`. Setting either dataset
    /// source in `over` clears the other one.
    pub fn merge(self, over: ExperimentConfig) -> ExperimentConfig {
        let source_overridden = over.graph.is_some() || over.hrg.is_some();
        let (graph, hrg) = if source_overridden {
            (over.graph, over.hrg)
        } else {
            (self.graph, self.hrg)
        };
        ExperimentConfig {
            graph,
            hrg,
            directed: over.directed.or(self.directed),
            strategies: over.strategies.or(self.strategies),
            alphas: over.alphas.or(self.alphas),
            reps: over.reps.or(self.reps),
            seed: over.seed.or(self.seed),
            beta: over.beta.or(self.beta),
            gamma: over.gamma.or(self.gamma),
            init_infected: over.init_infected.or(self.init_infected),
            max_rounds: over.max_rounds.or(self.max_rounds),
            threads: over.threads.or(self.threads),
            out: over.out.or(self.out),
        }
    }

    pub fn dataset(&self) -> Result<Dataset> {
        match (&self.graph, &self.hrg) {
            (Some(_), Some(_)) => Err(Error::Config("set either graph or hrg, not both".into())),
            (None, None) => Err(Error::Config("no graph or hrg given".into())),
            (Some(path), None) => Ok(Dataset::EdgeList {
                path: path.clone(),
                directed: self.directed.unwrap_or(false),
            }),
            (None, Some(spec)) => Ok(Dataset::Hrg(parse_hrg_spec(spec)?)),
        }
    }

    /// Resolves defaults. The initial infectious count defaults to
    /// [`default_initial_infectious`] of `n`, the node count of the graph.
    pub fn to_spec(&self, n: usize) -> Result<ExperimentSpec> {
        let strategies = match &self.strategies {
            None => StrategyId::ALL.to_vec(),
            Some(names) => names.iter().map(|s| s.parse()).collect::<Result<_>>()?,
        };
        let mut spec = ExperimentSpec::new(
            self.dataset()?,
            self.reps.unwrap_or(100),
            self.init_infected
                .unwrap_or_else(|| default_initial_infectious(n)),
        );
        spec.strategies = strategies;
        if let Some(a) = &self.alphas {
            spec.alphas = a.clone();
        }
        spec.master_seed = self.seed.unwrap_or(0);
        spec.beta = self.beta.unwrap_or(spec.beta);
        spec.gamma = self.gamma.unwrap_or(spec.gamma);
        spec.max_rounds = self.max_rounds.unwrap_or(DEFAULT_MAX_ROUNDS);
        spec.threads = self.threads;
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses `n=..,m=..[,b=..][,T=..][,seed=..]`.
pub fn parse_hrg_spec(text: &str) -> Result<HrgParams> {
    let bad = |msg: String| Error::Config(format!("hrg spec {text:?}: {msg}"));
    let (mut n, mut m) = (None, None);
    let mut params = HrgParams::new(0, 0, 0);
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
        let value = value.trim();
        let parse_err = || bad(format!("invalid value for {}", key.trim()));
        match key.trim() {
            "n" => n = Some(value.parse().map_err(|_| parse_err())?),
            "m" => m = Some(value.parse().map_err(|_| parse_err())?),
            "b" => params.exponent_b = value.parse().map_err(|_| parse_err())?,
            "T" => params.temperature = value.parse().map_err(|_| parse_err())?,
            "seed" => params.seed = value.parse().map_err(|_| parse_err())?,
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    params.n = n.ok_or_else(|| bad("missing n".into()))?;
    params.target_m = m.ok_or_else(|| bad("missing m".into()))?;
    params.validate()?;
    Ok(params)
}
