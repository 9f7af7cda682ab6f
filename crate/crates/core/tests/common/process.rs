use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use vaxsim::epidemic::{
    infection_probability, step, Compartment, DiseaseParams, EpidemicState, Simulation,
};
use vaxsim::Graph;

use Compartment::*;

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> EpidemicState {
    let mut st = EpidemicState::all_susceptible(n);
    for c in &mut st.compartments {
        *c = match rng.random_range(0..10) {
            0..=3 => Susceptible,
            4..=6 => Infectious,
            7 => Recovered,
            8 => Dead,
            _ => Vaccinated,
        };
    }
    st
}

/// Disease parameters with some extreme values mixed in, so that certain
/// death, certain recovery and permanent carriers all occur.
pub fn random_params<R: Rng>(rng: &mut R, g: &Graph) -> DiseaseParams {
    let n = g.n();
    let mut pick = || -> Vec<f64> {
        (0..n)
            .map(|_| match rng.random_range(0..6) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.random::<f64>(),
            })
            .collect()
    };
    let omega_i = pick();
    let omega_r = pick();
    let omega_d = pick();
    DiseaseParams::new(2.0, 0.6, omega_i, omega_r, omega_d).unwrap()
}

/// Infection probability evaluated directly on the dense weight matrix.
pub fn infection_oracle(g: &Graph, st: &EpidemicState, p: &DiseaseParams, v: usize) -> f64 {
    let w = super::dense_weights(g, true);
    let total: f64 = w[v].iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let infectious: f64 = (0..g.n())
        .filter(|&u| st.compartments[u] == Infectious)
        .map(|u| w[v][u])
        .sum();
    (p.beta * p.omega_i[v] * infectious / total).min(1.0)
}

/// Runs `steps` random steps on random graphs and checks conservation,
/// monotone counts, immutability of terminal compartments, exposure before
/// infection and the clamped infection probability. Returns the number of
/// steps checked.
pub fn check_step_invariants(seed: u64, steps: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < steps {
        let n = rng.random_range(2..25);
        let density = rng.random_range(0.05..0.6);
        let g = super::gnp(&mut rng, n, density);
        let p = random_params(&mut rng, &g);
        let mut st = random_state(&mut rng, n);
        for _ in 0..rng.random_range(1..40) {
            if done == steps {
                break;
            }
            for v in (0..n).filter(|&v| st.compartments[v] == Susceptible) {
                let q = infection_probability(v, &st, &g, &p);
                if !(0.0..=1.0).contains(&q) {
                    return Err(format!("infection probability {q} outside [0, 1]"));
                }
                let want = infection_oracle(&g, &st, &p, v);
                if (q - want).abs() > 1e-12 {
                    return Err(format!(
                        "infection probability {q}, direct evaluation {want}"
                    ));
                }
            }
            let next = step(&st, &g, &p, &mut rng).map_err(|e| e.to_string())?;
            done += 1;
            let (a, b) = (st.counts(), next.counts());
            if b.total() != n || next.round != st.round + 1 {
                return Err(format!("step {done}: {b:?} does not sum to {n}"));
            }
            if b.dead < a.dead || b.recovered < a.recovered || b.vaccinated < a.vaccinated {
                return Err(format!("step {done}: counts decreased from {a:?} to {b:?}"));
            }
            if b.susceptible > a.susceptible {
                return Err(format!("step {done}: susceptible count grew"));
            }
            for v in 0..n {
                let (before, after) = (st.compartments[v], next.compartments[v]);
                let ok = match before {
                    Recovered | Vaccinated | Dead => after == before,
                    Susceptible => {
                        let exposed = g
                            .neighbors(v)
                            .iter()
                            .any(|&u| st.compartments[u] == Infectious);
                        after == Susceptible || (after == Infectious && exposed)
                    }
                    Infectious => matches!(after, Infectious | Recovered | Dead),
                };
                if !ok {
                    return Err(format!(
                        "step {done}: node {v} went {before:?} -> {after:?}"
                    ));
                }
            }
            st = next;
        }
    }
    Ok(done)
}

/// Chi-square statistic and 1% critical value for the first-infection round
/// of a leaf whose star center stays infectious forever; the round is
/// Geometric(q) with q = β · ω_i(leaf) = 0.3.
pub fn star_geometric_chi_square(seed: u64, runs: usize) -> (f64, f64) {
    let leaves = 5;
    let g = Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
        .unwrap()
        .0;
    let n = g.n();
    let mut omega_i = vec![0.5; n];
    omega_i[1] = 0.15;
    let p = DiseaseParams::new(2.0, 0.6, omega_i, vec![0.0; n], vec![0.0; n]).unwrap();
    let q: f64 = 0.3;

    let bins = 12;
    let mut observed = vec![0usize; bins + 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..runs {
        let st = EpidemicState::with_seeds(n, &[], &[0]).unwrap();
        let mut sim = Simulation::new(&g, &p, st).unwrap();
        let first = loop {
            sim.step(&mut rng);
            if sim.state().compartments[1] == Infectious {
                break sim.state().round;
            }
        };
        observed[(first - 1).min(bins)] += 1;
    }
    // rounds 1..=12, then the tail
    let mut expected: Vec<f64> = (0..bins)
        .map(|k| runs as f64 * (1.0 - q).powi(k as i32) * q)
        .collect();
    expected.push(runs as f64 * (1.0 - q).powi(bins as i32));
    assert!(expected.iter().all(|&e| e >= 5.0));
    let stat = observed
        .iter()
        .zip(&expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let critical = ChiSquared::new(bins as f64).unwrap().inverse_cdf(0.99);
    (stat, critical)
}
