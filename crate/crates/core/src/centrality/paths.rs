//! Single-source shortest paths shared by closeness and betweenness.
//!
//! Weighted lengths are `1 - ω(e)` and may be zero. Among the paths of
//! minimum length, only those with the fewest hops count as shortest; this
//! keeps the predecessor relation acyclic when zero-length edges form
//! cycles, and with all lengths zero it reproduces hop-count paths exactly.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use super::Weighting;
use crate::graph::Graph;

pub(crate) const UNREACHED: usize = usize::MAX;

/// Lengths equal up to accumulated rounding are treated as ties.
#[inline]
pub(crate) fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[inline]
pub(crate) fn edge_length(weight: f64) -> f64 {
    1.0 - weight
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable buffers for repeated single-source searches on one graph.
pub(crate) struct SingleSource<'g> {
    graph: &'g Graph,
    weighting: Weighting,
    pub dist: Vec<f64>,
    pub hops: Vec<usize>,
    /// Reached nodes in non-decreasing hop order, source first.
    pub order: Vec<usize>,
    settled: Vec<bool>,
    heap: BinaryHeap<HeapEntry>,
    queue: VecDeque<usize>,
}

impl<'g> SingleSource<'g> {
    pub fn new(graph: &'g Graph, weighting: Weighting) -> Self {
        let n = graph.n();
        SingleSource {
            graph,
            weighting,
            dist: vec![f64::INFINITY; n],
            hops: vec![UNREACHED; n],
            order: Vec::with_capacity(n),
            settled: vec![false; n],
            heap: BinaryHeap::new(),
            queue: VecDeque::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn run(&mut self, source: usize) {
        for &v in &self.order {
            self.dist[v] = f64::INFINITY;
            self.hops[v] = UNREACHED;
            self.settled[v] = false;
        }
        self.order.clear();
        match self.weighting {
            Weighting::Unweighted => self.bfs(source),
            Weighting::Weighted => {
                self.dijkstra(source);
                self.tight_bfs(source);
            }
        }
    }

    /// `v` precedes `w` on some shortest path from the source.
    #[inline]
    pub fn is_predecessor(&self, v: usize, w: usize, weight: f64) -> bool {
        if self.hops[v] == UNREACHED || self.hops[v] + 1 != self.hops[w] {
            return false;
        }
        match self.weighting {
            Weighting::Unweighted => true,
            Weighting::Weighted => same_length(self.dist[v] + edge_length(weight), self.dist[w]),
        }
    }

    fn bfs(&mut self, source: usize) {
        self.dist[source] = 0.0;
        self.hops[source] = 0;
        self.order.push(source);
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            let next = self.hops[v] + 1;
            for &w in self.graph.neighbors(v) {
                if self.hops[w] == UNREACHED {
                    self.hops[w] = next;
                    self.dist[w] = next as f64;
                    self.order.push(w);
                    self.queue.push_back(w);
                }
            }
        }
    }

    fn dijkstra(&mut self, source: usize) {
        // `order` doubles as the list of touched nodes for the reset in `run`.
        self.dist[source] = 0.0;
        self.heap.push(HeapEntry {
            dist: 0.0,
            node: source,
        });
        let mut touched = std::mem::take(&mut self.order);
        touched.push(source);
        while let Some(HeapEntry { dist, node: v }) = self.heap.pop() {
            if self.settled[v] || dist > self.dist[v] {
                continue;
            }
            self.settled[v] = true;
            for (w, weight) in self.graph.adjacent(v) {
                let candidate = dist + edge_length(weight);
                if candidate < self.dist[w] {
                    if self.dist[w] == f64::INFINITY {
                        touched.push(w);
                    }
                    self.dist[w] = candidate;
                    self.heap.push(HeapEntry {
                        dist: candidate,
                        node: w,
                    });
                }
            }
        }
        for &v in &touched {
            self.settled[v] = false;
        }
        touched.clear();
        self.order = touched;
    }

    /// Fewest-hop search restricted to edges that lie on a shortest path.
    fn tight_bfs(&mut self, source: usize) {
        self.hops[source] = 0;
        self.order.push(source);
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            let next = self.hops[v] + 1;
            for (w, weight) in self.graph.adjacent(v) {
                if self.hops[w] == UNREACHED
                    && same_length(self.dist[v] + edge_length(weight), self.dist[w])
                {
                    self.hops[w] = next;
                    self.order.push(w);
                    self.queue.push_back(w);
                }
            }
        }
    }
}
