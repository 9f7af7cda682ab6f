//! Discrete-time stochastic SIR process with death and vaccination.
//!
//! Every round all nodes update synchronously from the previous round's
//! configuration:
//!
//! * a susceptible node `v` becomes infectious with probability
//!   `min(1, β·ω_i(v)·W_I(v)/W(v))`, where `W(v)` is the total weight of
//!   its incident edges and `W_I(v)` the part leading to infectious nodes;
//! * an infectious node dies with probability `ω_d(v)`, otherwise recovers
//!   with probability `γ·ω_r(v)`, otherwise stays infectious;
//! * recovered, dead and vaccinated nodes never change.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Backstop on the number of rounds in [`run_to_absorption`].
pub const DEFAULT_MAX_ROUNDS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Compartment {
    Susceptible,
    Infectious,
    Recovered,
    Dead,
    Vaccinated,
}

/// Global rates and per-node weight functions.
#[derive(Clone, Debug, PartialEq)]
pub struct DiseaseParams {
    pub beta: f64,
    pub gamma: f64,
    pub omega_i: Vec<f64>,
    pub omega_r: Vec<f64>,
    pub omega_d: Vec<f64>,
}

/// Upper end of the death probability range used when sampling.
pub const MAX_DEATH_RATE: f64 = 0.1;

impl DiseaseParams {
    pub fn new(
        beta: f64,
        gamma: f64,
        omega_i: Vec<f64>,
        omega_r: Vec<f64>,
        omega_d: Vec<f64>,
    ) -> Result<Self> {
        let params = DiseaseParams {
            beta,
            gamma,
            omega_i,
            omega_r,
            omega_d,
        };
        params.validate()?;
        Ok(params)
    }

    /// The same weights on every node.
    pub fn uniform(n: usize, beta: f64, gamma: f64, wi: f64, wr: f64, wd: f64) -> Result<Self> {
        Self::new(beta, gamma, vec![wi; n], vec![wr; n], vec![wd; n])
    }

    /// Draws `ω_i, ω_r ~ U[0, 1]` and `ω_d ~ U[0, 0.1]` independently per node.
    pub fn sample<R: Rng + ?Sized>(g: &Graph, beta: f64, gamma: f64, rng: &mut R) -> Self {
        let n = g.n();
        let mut omega_i = Vec::with_capacity(n);
        let mut omega_r = Vec::with_capacity(n);
        let mut omega_d = Vec::with_capacity(n);
        for _ in 0..n {
            omega_i.push(rng.random::<f64>());
            omega_r.push(rng.random::<f64>());
            omega_d.push(rng.random::<f64>() * MAX_DEATH_RATE);
        }
        DiseaseParams {
            beta,
            gamma,
            omega_i,
            omega_r,
            omega_d,
        }
    }

    pub fn n(&self) -> usize {
        self.omega_i.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidParameter(what));
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return bad(format!(
                "beta = {} must be a finite non-negative number",
                self.beta
            ));
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad(format!("gamma = {} outside [0, 1]", self.gamma));
        }
        let n = self.omega_i.len();
        if self.omega_r.len() != n || self.omega_d.len() != n {
            return bad("per-node weight arrays differ in length".into());
        }
        for (name, values) in [
            ("omega_i", &self.omega_i),
            ("omega_r", &self.omega_r),
            ("omega_d", &self.omega_d),
        ] {
            if let Some((v, x)) = values
                .iter()
                .enumerate()
                .find(|(_, x)| !(0.0..=1.0).contains(*x))
            {
                return bad(format!("{name}[{v}] = {x} outside [0, 1]"));
            }
        }
        Ok(())
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "disease parameters for {} nodes, graph has {}",
                self.n(),
                g.n()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub susceptible: usize,
    pub infectious: usize,
    pub recovered: usize,
    pub dead: usize,
    pub vaccinated: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.susceptible + self.infectious + self.recovered + self.dead + self.vaccinated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpidemicState {
    pub compartments: Vec<Compartment>,
    pub round: usize,
}

impl EpidemicState {
    pub fn all_susceptible(n: usize) -> Self {
        EpidemicState {
            compartments: vec![Compartment::Susceptible; n],
            round: 0,
        }
    }

    /// Vaccinates `vaccinated`, marks `infectious` as infectious and leaves
    /// everything else susceptible.
    pub fn with_seeds(n: usize, vaccinated: &[usize], infectious: &[usize]) -> Result<Self> {
        let mut st = Self::all_susceptible(n);
        for &v in vaccinated {
            *st.slot(v)? = Compartment::Vaccinated;
        }
        for &v in infectious {
            let slot = st.slot(v)?;
            if *slot == Compartment::Vaccinated {
                return Err(Error::InvalidParameter(format!(
                    "node {v} is both vaccinated and infectious"
                )));
            }
            *slot = Compartment::Infectious;
        }
        Ok(st)
    }

    fn slot(&mut self, v: usize) -> Result<&mut Compartment> {
        let n = self.compartments.len();
        self.compartments
            .get_mut(v)
            .ok_or(Error::NodeOutOfRange { node: v, n })
    }

    pub fn n(&self) -> usize {
        self.compartments.len()
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for s in &self.compartments {
            match s {
                Compartment::Susceptible => c.susceptible += 1,
                Compartment::Infectious => c.infectious += 1,
                Compartment::Recovered => c.recovered += 1,
                Compartment::Dead => c.dead += 1,
                Compartment::Vaccinated => c.vaccinated += 1,
            }
        }
        c
    }
}

/// Vaccinates `vaccinated` and seeds `initial_infectious` nodes drawn
/// uniformly without replacement from the remaining ones.
pub fn initialize_state<R: Rng + ?Sized>(
    g: &Graph,
    vaccinated: &[usize],
    initial_infectious: usize,
    rng: &mut R,
) -> Result<EpidemicState> {
    let mut st = EpidemicState::with_seeds(g.n(), vaccinated, &[])?;
    let pool: Vec<usize> = (0..g.n())
        .filter(|&v| st.compartments[v] == Compartment::Susceptible)
        .collect();
    if initial_infectious > pool.len() {
        return Err(Error::InvalidParameter(format!(
            "{initial_infectious} initial infectious requested but only {} unvaccinated nodes",
            pool.len()
        )));
    }
    for i in index::sample(rng, pool.len(), initial_infectious) {
        st.compartments[pool[i]] = Compartment::Infectious;
    }
    Ok(st)
}

/// Probability that susceptible node `v` is infectious next round; zero for
/// nodes in any other compartment and for nodes without neighbors.
pub fn infection_probability(v: usize, st: &EpidemicState, g: &Graph, p: &DiseaseParams) -> f64 {
    if st.compartments[v] != Compartment::Susceptible {
        return 0.0;
    }
    let mut total = 0.0;
    let mut infectious = 0.0;
    for (u, w) in g.adjacent(v) {
        total += w;
        if st.compartments[u] == Compartment::Infectious {
            infectious += w;
        }
    }
    if infectious == 0.0 {
        return 0.0;
    }
    (p.beta * p.omega_i[v] * infectious / total).min(1.0)
}

/// Final tally of one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub counts: Counts,
    pub rounds: usize,
    pub survival_ratio: f64,
    /// The round limit was hit before the process froze.
    pub truncated: bool,
}

impl Outcome {
    pub fn survivors(&self) -> usize {
        self.counts.total() - self.counts.dead
    }
}

/// Incremental simulator. Keeps the infectious set explicitly so a round
/// costs time proportional to the edges around infectious nodes.
pub struct Simulation<'a> {
    graph: &'a Graph,
    params: &'a DiseaseParams,
    state: EpidemicState,
    weighted_degree: Vec<f64>,
    infectious: Vec<usize>,
    pressure: Vec<f64>,
    touched: Vec<usize>,
    newly_infected: Vec<usize>,
}

impl<'a> Simulation<'a> {
    pub fn new(graph: &'a Graph, params: &'a DiseaseParams, state: EpidemicState) -> Result<Self> {
        params.check_graph(graph)?;
        if state.n() != graph.n() {
            return Err(Error::InvalidParameter(format!(
                "state has {} nodes, graph has {}",
                state.n(),
                graph.n()
            )));
        }
        let weighted_degree = (0..graph.n())
            .map(|v| graph.neighbor_weights(v).iter().sum())
            .collect();
        let infectious = (0..graph.n())
            .filter(|&v| state.compartments[v] == Compartment::Infectious)
            .collect();
        Ok(Simulation {
            graph,
            params,
            state,
            weighted_degree,
            infectious,
            pressure: vec![0.0; graph.n()],
            touched: Vec::new(),
            newly_infected: Vec::new(),
        })
    }

    pub fn state(&self) -> &EpidemicState {
        &self.state
    }

    pub fn into_state(self) -> EpidemicState {
        self.state
    }

    /// True when no transition has positive probability.
    pub fn is_frozen(&self) -> bool {
        let p = self.params;
        let can_leave = |u: usize| p.omega_d[u] > 0.0 || p.gamma * p.omega_r[u] > 0.0;
        if self.infectious.iter().any(|&u| can_leave(u)) {
            return false;
        }
        !self.infectious.iter().any(|&u| {
            self.graph.adjacent(u).any(|(v, w)| {
                self.state.compartments[v] == Compartment::Susceptible
                    && p.beta * p.omega_i[v] * w > 0.0
            })
        })
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let g = self.graph;
        let p = self.params;
        let comp = &mut self.state.compartments;

        for &u in &self.infectious {
            for (v, w) in g.adjacent(u) {
                if comp[v] == Compartment::Susceptible {
                    if self.pressure[v] == 0.0 {
                        self.touched.push(v);
                    }
                    self.pressure[v] += w;
                }
            }
        }

        // draws are made in node order, so a round depends only on the state
        // and the random stream
        self.touched.sort_unstable();
        self.newly_infected.clear();
        for &v in &self.touched {
            let prob =
                (p.beta * p.omega_i[v] * self.pressure[v] / self.weighted_degree[v]).min(1.0);
            if rng.random::<f64>() < prob {
                self.newly_infected.push(v);
            }
            self.pressure[v] = 0.0;
        }
        self.touched.clear();

        self.infectious.retain(|&u| {
            if rng.random::<f64>() < p.omega_d[u] {
                comp[u] = Compartment::Dead;
                false
            } else if rng.random::<f64>() < p.gamma * p.omega_r[u] {
                comp[u] = Compartment::Recovered;
                false
            } else {
                true
            }
        });

        for &v in &self.newly_infected {
            comp[v] = Compartment::Infectious;
        }
        self.infectious.extend_from_slice(&self.newly_infected);
        self.infectious.sort_unstable();
        self.state.round += 1;
    }

    /// Steps until frozen or until the state reaches round `max_rounds`.
    pub fn run<R: Rng + ?Sized>(&mut self, rng: &mut R, max_rounds: usize) -> Outcome {
        let start = self.state.round;
        let mut truncated = false;
        while !self.is_frozen() {
            if self.state.round - start >= max_rounds {
                truncated = true;
                break;
            }
            self.step(rng);
        }
        let counts = self.state.counts();
        let n = self.state.n();
        Outcome {
            counts,
            rounds: self.state.round - start,
            survival_ratio: if n == 0 {
                1.0
            } else {
                (n - counts.dead) as f64 / n as f64
            },
            truncated,
        }
    }
}

/// Advances a state by one synchronous round.
pub fn step<R: Rng + ?Sized>(
    st: &EpidemicState,
    g: &Graph,
    p: &DiseaseParams,
    rng: &mut R,
) -> Result<EpidemicState> {
    let mut sim = Simulation::new(g, p, st.clone())?;
    sim.step(rng);
    Ok(sim.into_state())
}

/// Runs from `st0` until no transition has positive probability, or until
/// `max_rounds` rounds have elapsed (reported through [`Outcome::truncated`]).
pub fn run_to_absorption<R: Rng + ?Sized>(
    st0: &EpidemicState,
    g: &Graph,
    p: &DiseaseParams,
    rng: &mut R,
    max_rounds: usize,
) -> Result<Outcome> {
    if max_rounds == 0 {
        return Err(Error::InvalidParameter(
            "max_rounds must be at least 1".into(),
        ));
    }
    let mut sim = Simulation::new(g, p, st0.clone())?;
    Ok(sim.run(rng, max_rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Compartment::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn edge() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap().0
    }

    #[test]
    fn infection_probability_hand_values() {
        let g = edge();
        let mut p = DiseaseParams::uniform(2, 2.0, 0.6, 0.4, 0.0, 0.0).unwrap();
        let st = EpidemicState::with_seeds(2, &[], &[0]).unwrap();
        assert_relative_eq!(infection_probability(1, &st, &g, &p), 0.8);
        p.omega_i[1] = 1.0;
        assert_eq!(infection_probability(1, &st, &g, &p), 1.0);

        let none = EpidemicState::all_susceptible(2);
        assert_eq!(infection_probability(1, &none, &g, &p), 0.0);
    }

    #[test]
    fn isolated_susceptible_has_zero_probability() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap().0;
        let p = DiseaseParams::uniform(3, 2.0, 0.6, 1.0, 0.0, 0.0).unwrap();
        let st = EpidemicState::with_seeds(3, &[], &[0]).unwrap();
        assert_eq!(infection_probability(2, &st, &g, &p), 0.0);
    }

    #[test]
    fn step_without_infectious_only_advances_round() {
        let g = edge();
        let p = DiseaseParams::uniform(2, 2.0, 0.6, 1.0, 1.0, 0.1).unwrap();
        let st = EpidemicState::with_seeds(2, &[1], &[]).unwrap();
        let next = step(&st, &g, &p, &mut rng()).unwrap();
        assert_eq!(next.compartments, st.compartments);
        assert_eq!(next.round, 1);
    }

    #[test]
    fn certain_death_and_certain_infection() {
        let g = edge();
        let p =
            DiseaseParams::new(2.0, 0.6, vec![1.0, 1.0], vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
        let st = EpidemicState::with_seeds(2, &[], &[0]).unwrap();
        for seed in 0..20 {
            let next = step(&st, &g, &p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            assert_eq!(next.compartments, vec![Dead, Infectious]);
        }
    }

    #[test]
    fn two_node_permanent_carrier_infects_surely() {
        let g = edge();
        let p =
            DiseaseParams::new(2.0, 0.6, vec![1.0, 1.0], vec![0.0, 0.0], vec![0.0, 0.0]).unwrap();
        let st = EpidemicState::with_seeds(2, &[], &[0]).unwrap();
        let next = step(&st, &g, &p, &mut rng()).unwrap();
        assert_eq!(next.compartments, vec![Infectious, Infectious]);
        // both carriers are permanent and nobody is left to infect
        let out = run_to_absorption(&next, &g, &p, &mut rng(), 10).unwrap();
        assert_eq!(out.rounds, 0);
        assert!(!out.truncated);
    }

    #[test]
    fn all_recovered_terminates_immediately() {
        let g = edge();
        let p = DiseaseParams::uniform(2, 2.0, 0.6, 1.0, 1.0, 0.1).unwrap();
        let st = EpidemicState {
            compartments: vec![Recovered; 2],
            round: 0,
        };
        let out = run_to_absorption(&st, &g, &p, &mut rng(), 5).unwrap();
        assert_eq!(out.rounds, 0);
        assert_eq!(out.survival_ratio, 1.0);
    }

    #[test]
    fn survival_ratio_counts_dead() {
        let g = Graph::from_edges(10, []).unwrap().0;
        let p = DiseaseParams::uniform(10, 2.0, 0.6, 1.0, 0.0, 1.0).unwrap();
        let st = EpidemicState::with_seeds(10, &[], &[3, 4]).unwrap();
        let out = run_to_absorption(&st, &g, &p, &mut rng(), 5).unwrap();
        assert_eq!(out.counts.dead, 2);
        assert_relative_eq!(out.survival_ratio, 0.8);
        assert_eq!(out.survivors(), 8);
    }

    #[test]
    fn truncation_is_flagged() {
        // permanent carrier next to a node that can never be infected
        let g = edge();
        let p =
            DiseaseParams::new(2.0, 0.6, vec![1.0, 1.0], vec![0.0, 0.0], vec![0.0, 0.0]).unwrap();
        let st = EpidemicState::with_seeds(2, &[], &[0]).unwrap();
        let mut p2 = p.clone();
        p2.beta = 0.0;
        assert!(
            !run_to_absorption(&st, &g, &p2, &mut rng(), 3)
                .unwrap()
                .truncated
        );
        let mut p3 = p;
        p3.omega_d[0] = 1e-12;
        p3.omega_i[1] = 0.0;
        let out = run_to_absorption(&st, &g, &p3, &mut rng(), 3).unwrap();
        assert!(out.truncated);
        assert_eq!(out.rounds, 3);
        assert!(run_to_absorption(&st, &g, &p3, &mut rng(), 0).is_err());
    }

    #[test]
    fn sampled_params_respect_ranges_and_seed() {
        let g = Graph::from_edges(100_000, []).unwrap().0;
        let a = DiseaseParams::sample(&g, 2.0, 0.6, &mut rng());
        let b = DiseaseParams::sample(&g, 2.0, 0.6, &mut rng());
        assert_eq!(a, b);
        assert!(a
            .omega_d
            .iter()
            .all(|&x| (0.0..=MAX_DEATH_RATE).contains(&x)));
        a.validate().unwrap();
        let mean = a.omega_i.iter().sum::<f64>() / a.n() as f64;
        assert!((mean - 0.5).abs() < 0.01, "{mean}");
    }

    #[test]
    fn initial_infectious_avoid_vaccinated() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
            .unwrap()
            .0;
        let st = initialize_state(&g, &[0, 1, 3, 4], 1, &mut rng()).unwrap();
        assert_eq!(
            st.compartments,
            vec![Vaccinated, Vaccinated, Infectious, Vaccinated, Vaccinated]
        );
        assert!(initialize_state(&g, &[0, 1, 3, 4], 2, &mut rng()).is_err());
        assert!(initialize_state(&g, &[7], 0, &mut rng()).is_err());
        let st = initialize_state(&g, &[], 3, &mut rng()).unwrap();
        assert_eq!(st.counts().infectious, 3);
        assert_eq!(st.round, 0);
    }

    #[test]
    fn rejects_out_of_range_params() {
        assert!(DiseaseParams::uniform(1, -1.0, 0.5, 0.5, 0.5, 0.05).is_err());
        assert!(DiseaseParams::uniform(1, 2.0, 1.5, 0.5, 0.5, 0.05).is_err());
        assert!(DiseaseParams::new(2.0, 0.5, vec![0.5], vec![0.5, 0.1], vec![0.0]).is_err());
        assert!(DiseaseParams::uniform(1, 2.0, 0.5, 0.5, 0.5, 1.2).is_err());
    }
}
