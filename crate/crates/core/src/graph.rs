//! Immutable weighted undirected simple graphs.
//!
//! Adjacency is stored in compressed sparse row form: the neighbors of `v`
//! are `targets[offsets[v]..offsets[v + 1]]`, sorted ascending, with the
//! weight of each incident edge at the same position in `weights`. Both
//! directions of an edge carry the same weight.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    labels: Vec<u64>,
}

/// Counts of input records dropped while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops: usize,
    /// Records naming an edge already present in the same orientation.
    pub duplicates: usize,
    /// Records whose reverse orientation was already present.
    pub reciprocal: usize,
}

impl Graph {
    /// Builds a graph on nodes `0..n` from an edge iterator with unit weights.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Graph, BuildReport)> {
        Self::from_weighted_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    /// Builds a graph on nodes `0..n`. Self-loops are dropped; for repeated
    /// pairs the first weight wins.
    pub fn from_weighted_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<(Graph, BuildReport)> {
        let mut report = BuildReport::default();
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "edge weight {w} for {{{u},{v}}} outside (0, 1]"
                )));
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            let key = (u.min(v), u.max(v));
            let forward = u < v;
            match seen.get(&key) {
                Some(&first_forward) if first_forward == forward => report.duplicates += 1,
                Some(_) => report.reciprocal += 1,
                None => {
                    seen.insert(key, forward);
                    list.push((key.0, key.1, w));
                }
            }
        }
        Ok((Self::from_simple_edges(n, &list), report))
    }

    /// Builds from edges already known to be simple (no loops, no repeats).
    pub(crate) fn from_simple_edges(n: usize, edges: &[(usize, usize, f64)]) -> Graph {
        let mut degree = vec![0usize; n];
        for &(u, v, _) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut adjacency = vec![(0usize, 0.0f64); offsets[n]];
        for &(u, v, w) in edges {
            adjacency[cursor[u]] = (v, w);
            cursor[u] += 1;
            adjacency[cursor[v]] = (u, w);
            cursor[v] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable_by_key(|&(t, _)| t);
        }
        let (targets, weights) = adjacency.into_iter().unzip();
        Graph {
            offsets,
            targets,
            weights,
            labels: (0..n as u64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Weights of the edges incident to `v`, aligned with [`Graph::neighbors`].
    #[inline]
    pub fn neighbor_weights(&self, v: usize) -> &[f64] {
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn adjacent(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.neighbors(v)
            .iter()
            .copied()
            .zip(self.neighbor_weights(v).iter().copied())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.neighbors(v).len())
    }

    pub fn weighted_degree(&self, v: usize) -> Result<f64> {
        self.check_node(v)?;
        Ok(self.neighbor_weights(v).iter().sum())
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.n(),
            })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.neighbor_weights(u)[i])
    }

    /// Edges as `(u, v, weight)` with `u < v`, ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adjacent(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Original identifier of node `v` (its id in the source file).
    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Same structure with every weight replaced by `weight(u, v)`.
    pub fn reweighted(&self, mut weight: impl FnMut(usize, usize) -> f64) -> Graph {
        let mut weights = Vec::with_capacity(self.targets.len());
        for u in 0..self.n() {
            let row = &self.targets[self.offsets[u]..self.offsets[u + 1]];
            weights.extend(row.iter().map(|&v| weight(u, v)));
        }
        Graph {
            weights,
            ..self.clone()
        }
    }

    /// Jaccard edge weights: `|N̂(v) ∩ N̂(u)| / |N(v) ∪ N(u)|` where `N̂` is
    /// the closed neighborhood. Always in `(0, 1]` since the numerator counts
    /// both endpoints.
    pub fn jaccard_weights(&self) -> Graph {
        let n = self.n();
        let mut stamp = vec![usize::MAX; n];
        let mut weights = vec![0.0; self.targets.len()];
        for u in 0..n {
            for &w in self.neighbors(u) {
                stamp[w] = u;
            }
            for i in self.offsets[u]..self.offsets[u + 1] {
                let v = self.targets[i];
                if v < u {
                    continue;
                }
                let common = self.neighbors(v).iter().filter(|&&w| stamp[w] == u).count();
                let union = self.neighbors(u).len() + self.neighbors(v).len() - common;
                let jac = (common + 2) as f64 / union as f64;
                weights[i] = jac;
                let j = self.offsets[v] + self.neighbors(v).binary_search(&u).unwrap();
                weights[j] = jac;
            }
        }
        Graph {
            weights,
            ..self.clone()
        }
    }

    /// Writes the graph as a SNAP edge list using node labels, one edge per
    /// line sorted by `(min, max)`. Isolated nodes are not represented.
    pub fn write_edge_list<W: Write>(&self, mut out: W, with_weights: bool) -> std::io::Result<()> {
        let mut rows: Vec<(u64, u64, f64)> = self
            .edges()
            .map(|(u, v, w)| {
                let (a, b) = (self.labels[u], self.labels[v]);
                (a.min(b), a.max(b), w)
            })
            .collect();
        rows.sort_unstable_by_key(|&(a, b, _)| (a, b));
        for (a, b, w) in rows {
            if with_weights {
                writeln!(out, "{a} {b} {w:.9}")?;
            } else {
                writeln!(out, "{a} {b}")?;
            }
        }
        out.flush()
    }
}

/// Reads a SNAP-style edge list. With `directed`, arcs `(u, v)` and `(v, u)`
/// collapse into one undirected edge. Node ids are compacted to `0..n` in
/// order of first appearance; the source ids stay available as labels.
/// An optional third column is read as the edge weight.
pub fn load_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
    let (graph, report) = load_edge_list_with_report(reader, directed)?;
    if report.self_loops > 0 || report.duplicates > 0 {
        log::warn!(
            "dropped {} self-loops and {} duplicate edges",
            report.self_loops,
            report.duplicates
        );
    }
    if report.reciprocal > 0 && !directed {
        log::warn!("dropped {} reversed duplicate edges", report.reciprocal);
    }
    Ok(graph)
}

pub fn load_edge_list_with_report<R: BufRead>(
    reader: R,
    _directed: bool,
) -> Result<(Graph, BuildReport)> {
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut records = Vec::new();
    let mut intern = |id: u64, labels: &mut Vec<u64>| {
        *index.entry(id).or_insert_with(|| {
            labels.push(id);
            labels.len() - 1
        })
    };
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: lineno + 1,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: lineno + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let mut id = || -> Result<u64> {
            let tok = fields
                .next()
                .ok_or_else(|| parse_err("expected two node ids".into()))?;
            tok.parse::<u64>()
                .map_err(|_| parse_err(format!("invalid node id `{tok}`")))
        };
        let (a, b) = (id()?, id()?);
        let weight = match fields.next() {
            None => 1.0,
            Some(tok) => tok
                .parse::<f64>()
                .map_err(|_| parse_err(format!("invalid weight `{tok}`")))?,
        };
        if fields.next().is_some() {
            return Err(parse_err("too many fields".into()));
        }
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        records.push((u, v, weight));
    }
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (graph, report) = Graph::from_weighted_edges(labels.len(), records)?;
    Ok((graph.with_labels(labels)?, report))
}
