//! A single outbreak on a Facebook-sized hyperbolic random graph, printed
//! round by round until the process freezes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vaxsim::epidemic::{initialize_state, DiseaseParams, Simulation};
use vaxsim::hrg::{self, HrgParams};

fn main() -> vaxsim::Result<()> {
    let graph = hrg::generate(&HrgParams::new(4039, 88234, 1))?.jaccard_weights();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = DiseaseParams::sample(&graph, 2.0, 0.6, &mut rng);
    let start = initialize_state(&graph, &[], 20, &mut rng)?;

    let mut sim = Simulation::new(&graph, &params, start)?;
    println!("round  susceptible  infectious  recovered  dead");
    while !sim.is_frozen() {
        let c = sim.state().counts();
        if sim.state().round % 25 == 0 {
            println!(
                "{:5}  {:11}  {:10}  {:9}  {:4}",
                sim.state().round,
                c.susceptible,
                c.infectious,
                c.recovered,
                c.dead
            );
        }
        sim.step(&mut rng);
    }
    let c = sim.state().counts();
    println!(
        "frozen at round {}: survival ratio {:.4} ({} dead)",
        sim.state().round,
        (c.total() - c.dead) as f64 / c.total() as f64,
        c.dead
    );
    Ok(())
}
