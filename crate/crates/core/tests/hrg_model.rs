use vaxsim::hrg::{generate, generate_with_radius, tail_exponent, HrgParams};
use vaxsim::Error;

#[test]
fn edge_count_matches_target_on_average() {
    let seeds = 20;
    let total: usize = (0..seeds)
        .map(|s| generate(&HrgParams::new(1000, 4000, s)).unwrap().m())
        .sum();
    let mean = total as f64 / seeds as f64;
    assert!((3800.0..=4200.0).contains(&mean), "mean m = {mean}");
}

#[test]
fn tail_exponent_near_requested() {
    let g = generate(&HrgParams::new(10_000, 50_000, 8)).unwrap();
    let b = tail_exponent(&g, 10).unwrap();
    assert!((2.2..=2.8).contains(&b), "fitted exponent {b}");
}

#[test]
fn simple_graph_with_exact_node_count() {
    let g = generate(&HrgParams::new(500, 2500, 1)).unwrap();
    assert_eq!(g.n(), 500);
    for (u, v, w) in g.edges() {
        assert!(u < v);
        assert_eq!(w, 1.0);
    }
    let mut pairs: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    pairs.dedup();
    assert_eq!(pairs.len(), g.m());
}

#[test]
fn seed_determines_graph() {
    let p = HrgParams::new(400, 1600, 12);
    let a = generate(&p).unwrap();
    let b = generate(&p).unwrap();
    assert!(a.edges().eq(b.edges()));
    let c = generate(&HrgParams::new(400, 1600, 13)).unwrap();
    assert!(!a.edges().eq(c.edges()));
}

#[test]
fn radius_shrinks_as_density_grows() {
    let sparse = generate_with_radius(&HrgParams::new(800, 1600, 2)).unwrap();
    let dense = generate_with_radius(&HrgParams::new(800, 16000, 2)).unwrap();
    assert!(dense.radius < sparse.radius);
    for h in [&sparse, &dense] {
        assert!((h.expected_m - h.graph.m() as f64).abs() < 0.2 * h.expected_m);
    }
}

#[test]
fn unreachable_density_reports_range() {
    match generate(&HrgParams::new(10, 45, 0)) {
        Err(Error::Calibration { target, min, max }) => {
            assert_eq!(target, 45);
            assert!(min <= max && max < 45.0);
        }
        other => panic!("expected a calibration error, got {other:?}"),
    }
}
