//! The reduction from densest-k-subgraph to optimal vaccination, in
//! executable form.
//!
//! [`convert`] turns a connected graph `H` into a vaccination instance `G`:
//! one carrier `x`, one node `y_i` per node of `H` (all adjacent to `x`) and
//! one node `z_j` per edge of `H`, adjacent to the two `y` nodes of its
//! endpoints. `x` and the `y` nodes never die or recover; `z` nodes die as
//! soon as they are infected. Vaccinating `k` nodes of `G` then saves
//! exactly `OPT_H(k) + n_H + 1` nodes at best, which the brute-force
//! routines here check instance by instance.

use std::collections::{HashSet, VecDeque};

use rand::Rng;

use crate::epidemic::{
    run_to_absorption, Compartment, DiseaseParams, EpidemicState, DEFAULT_MAX_ROUNDS,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest subset count the exhaustive searches will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct ConvertedInstance {
    pub graph: Graph,
    pub x: usize,
    /// `y_nodes[i]` stands for node `i` of `H`.
    pub y_nodes: Vec<usize>,
    /// `z_nodes[j]` stands for the `j`-th edge of `H` in `Graph::edges` order.
    pub z_nodes: Vec<usize>,
    pub params: DiseaseParams,
    /// `x` infectious, everything else susceptible.
    pub initial: EpidemicState,
}

impl ConvertedInstance {
    pub fn n_h(&self) -> usize {
        self.y_nodes.len()
    }
}

/// Converts with `β = 2`, `γ = 0.6`; the outcome does not depend on either.
pub fn convert(h: &Graph) -> Result<ConvertedInstance> {
    convert_with_rates(h, 2.0, 0.6)
}

pub fn convert_with_rates(h: &Graph, beta: f64, gamma: f64) -> Result<ConvertedInstance> {
    if h.is_empty() {
        return Err(Error::InvalidParameter(
            "H must have at least one node".into(),
        ));
    }
    if !is_connected(h) {
        return Err(Error::Disconnected);
    }
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta = {beta} must be positive"
        )));
    }
    let n_h = h.n();
    let x = 0;
    let y_nodes: Vec<usize> = (1..=n_h).collect();
    let h_edges: Vec<(usize, usize)> = h.edges().map(|(u, v, _)| (u, v)).collect();
    let z_nodes: Vec<usize> = (0..h_edges.len()).map(|j| n_h + 1 + j).collect();
    let n_g = n_h + h_edges.len() + 1;

    let mut edges = Vec::with_capacity(n_h + 2 * h_edges.len());
    for &y in &y_nodes {
        edges.push((x, y, 1.0));
    }
    for (j, &(a, b)) in h_edges.iter().enumerate() {
        edges.push((y_nodes[a], z_nodes[j], 1.0));
        edges.push((y_nodes[b], z_nodes[j], 1.0));
    }
    let graph = Graph::from_simple_edges(n_g, &edges);

    let mut omega_d = vec![0.0; n_g];
    for &z in &z_nodes {
        omega_d[z] = 1.0;
    }
    let params = DiseaseParams::new(beta, gamma, vec![1.0; n_g], vec![0.0; n_g], omega_d)?;
    let initial = EpidemicState::with_seeds(n_g, &[], &[x])?;
    Ok(ConvertedInstance {
        graph,
        x,
        y_nodes,
        z_nodes,
        params,
        initial,
    })
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == g.n()
}

/// Length of the shortest cycle, `None` for acyclic graphs.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn guard(n: usize, k: usize) -> Result<()> {
    let count = binomial(n, k);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Calls `visit` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive densest `k`-subgraph: a maximizing node set and its induced
/// edge count `OPT_H(k)`.
pub fn densest_subgraph_bruteforce(h: &Graph, k: usize) -> Result<(Vec<usize>, usize)> {
    if k == 0 || k > h.n() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside [1, {}]",
            h.n()
        )));
    }
    guard(h.n(), k)?;
    let mut best: Option<(Vec<usize>, usize)> = None;
    for_each_subset(h.n(), k, |set| {
        let mut edges = 0;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if h.has_edge(u, v) {
                    edges += 1;
                }
            }
        }
        if best.as_ref().is_none_or(|b| edges > b.1) {
            best = Some((set.to_vec(), edges));
        }
    });
    Ok(best.expect("at least one subset"))
}

/// Cases that need no search: `k ≥ n_H` gives `m_H`; a tree, or `k` below
/// the girth of a connected graph, gives `k - 1`. Otherwise `None`.
pub fn special_case(h: &Graph, k: usize) -> Option<usize> {
    if k >= h.n() {
        return Some(h.m());
    }
    if k == 0 {
        return Some(0);
    }
    if !is_connected(h) {
        return None;
    }
    match girth(h) {
        None => Some(k - 1),
        Some(g) if k < g => Some(k - 1),
        Some(_) => None,
    }
}

/// Survivors at absorption when `vaccinated` is immunized. Exact for
/// converted instances: every unvaccinated node reachable from `x` through
/// permanent carriers is eventually infected almost surely, and only the
/// `z` nodes among them die.
pub fn absorbed_survivors(inst: &ConvertedInstance, vaccinated: &[bool]) -> usize {
    let g = &inst.graph;
    let mut reached = vec![false; g.n()];
    let mut stack = vec![inst.x];
    reached[inst.x] = true;
    let mut dead = 0;
    while let Some(v) = stack.pop() {
        if inst.params.omega_d[v] >= 1.0 {
            dead += 1;
            continue;
        }
        for &w in g.neighbors(v) {
            if !reached[w] && !vaccinated[w] {
                reached[w] = true;
                stack.push(w);
            }
        }
    }
    g.n() - dead
}

/// Exhaustive optimal vaccination of `k` nodes (the carrier `x` excluded):
/// a best set and `OPT_G(k)`, the number of survivors it achieves.
pub fn optimal_vaccination_bruteforce(
    inst: &ConvertedInstance,
    k: usize,
) -> Result<(Vec<usize>, usize)> {
    let n_g = inst.graph.n();
    if k >= n_g {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be below n_G = {n_g}"
        )));
    }
    let candidates: Vec<usize> = (0..n_g)
        .filter(|&v| inst.initial.compartments[v] != Compartment::Infectious)
        .collect();
    guard(candidates.len(), k)?;
    let mut vaccinated = vec![false; n_g];
    let mut best: Option<(Vec<usize>, usize)> = None;
    for_each_subset(candidates.len(), k, |set| {
        for &i in set {
            vaccinated[candidates[i]] = true;
        }
        let survivors = absorbed_survivors(inst, &vaccinated);
        for &i in set {
            vaccinated[candidates[i]] = false;
        }
        if best.as_ref().is_none_or(|b| survivors > b.1) {
            best = Some((set.iter().map(|&i| candidates[i]).collect(), survivors));
        }
    });
    Ok(best.expect("at least one subset"))
}

/// Mean survivors over `reps` simulated runs and the standard error of
/// that mean.
pub fn expected_survivors_mc<R: Rng + ?Sized>(
    g: &Graph,
    p: &DiseaseParams,
    vaccinated: &[usize],
    infectious: &[usize],
    reps: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if reps == 0 {
        return Err(Error::InvalidParameter("reps must be at least 1".into()));
    }
    let st0 = EpidemicState::with_seeds(g.n(), vaccinated, infectious)?;
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let out = run_to_absorption(&st0, g, p, rng, DEFAULT_MAX_ROUNDS)?;
        samples.push(out.survivors() as f64);
    }
    let mean = samples.iter().sum::<f64>() / reps as f64;
    let se = if reps > 1 {
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        (var / reps as f64).sqrt()
    } else {
        0.0
    };
    Ok((mean, se))
}

/// Both optima for one `(H, k)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub n_h: usize,
    pub k: usize,
    pub opt_h: usize,
    pub opt_g: usize,
}

impl ReductionCheck {
    /// `OPT_G(k) = OPT_H(k) + n_H + 1`.
    pub fn holds(&self) -> bool {
        self.opt_g == self.opt_h + self.n_h + 1
    }
}

pub fn check_reduction(h: &Graph, k: usize) -> Result<ReductionCheck> {
    let inst = convert(h)?;
    let (_, opt_h) = densest_subgraph_bruteforce(h, k)?;
    let (_, opt_g) = optimal_vaccination_bruteforce(&inst, k)?;
    Ok(ReductionCheck {
        n_h: h.n(),
        k,
        opt_h,
        opt_g,
    })
}

/// One representative of every isomorphism class of connected graphs on
/// `n ≤ 8` nodes.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "graph enumeration supports at most 8 nodes");
    let mut classes: Vec<u32> = all_graph_classes(n).into_iter().collect();
    classes.sort_unstable();
    classes
        .into_iter()
        .map(|mask| {
            let edges = pair_list(n)
                .into_iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e);
            Graph::from_edges(n, edges).expect("valid pairs").0
        })
        .filter(is_connected)
        .collect()
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Canonical edge masks (minimum over relabelings) of all graphs on `n`
/// nodes, built by adding one node at a time.
fn all_graph_classes(n: usize) -> HashSet<u32> {
    let mut classes = HashSet::from([0u32]);
    for size in 2..=n {
        let perms = permutations(size);
        let mut next = HashSet::new();
        for &mask in &classes {
            let edges: Vec<(usize, usize)> = relabel_pairs(size - 1, mask);
            for nbrs in 0u32..(1 << (size - 1)) {
                let mut all = edges.clone();
                all.extend(
                    (0..size - 1)
                        .filter(|u| nbrs >> u & 1 == 1)
                        .map(|u| (u, size - 1)),
                );
                let canon = perms
                    .iter()
                    .map(|p| {
                        all.iter()
                            .fold(0u32, |m, &(a, b)| m | 1 << pair_index(size, p[a], p[b]))
                    })
                    .min()
                    .unwrap();
                next.insert(canon);
            }
        }
        classes = next;
    }
    classes
}

fn relabel_pairs(n: usize, mask: u32) -> Vec<(usize, usize)> {
    pair_list(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}
