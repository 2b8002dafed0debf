//! Full and truncated single-source shortest paths.
//!
//! Both variants share one settlement loop, so a truncated run settles
//! exactly a prefix of what the full run settles, with bit-identical
//! distances. The queue is a binary heap with lazy deletion; equal
//! distances settle in ascending node id order.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DijkstraError {
    #[error("search from {origin} exhausted the graph with {missing} target(s) unsettled")]
    TargetUnreachable { origin: NodeId, missing: usize },
    #[error("target set is empty")]
    NoTargets,
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    dist: f64,
    node: NodeId,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Reversed so the max-heap pops the smallest (dist, node) first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

/// Nodes settled by one truncated run, with their exact distances.
///
/// A node absent from the result was not settled; its distance from the
/// source is unknown to the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterminedDistances {
    source: NodeId,
    settled: Vec<(NodeId, f64)>,
    by_node: Vec<(NodeId, f64)>,
}

impl DeterminedDistances {
    fn new(source: NodeId, settled: Vec<(NodeId, f64)>) -> Self {
        let mut by_node = settled.clone();
        by_node.sort_unstable_by_key(|&(v, _)| v);
        Self { source, settled, by_node }
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    /// Settled nodes in settlement order (non-decreasing distance).
    pub fn settled(&self) -> &[(NodeId, f64)] {
        &self.settled
    }

    /// Settled nodes ordered by node id.
    pub fn by_node(&self) -> &[(NodeId, f64)] {
        &self.by_node
    }

    pub fn len(&self) -> usize {
        self.settled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.settled.is_empty()
    }

    pub fn distance(&self, node: NodeId) -> Option<f64> {
        self.by_node
            .binary_search_by_key(&node, |&(v, _)| v)
            .ok()
            .map(|k| self.by_node[k].1)
    }

    pub fn is_settled(&self, node: NodeId) -> bool {
        self.distance(node).is_some()
    }
}

/// Reusable search state over one graph.
///
/// Scratch arrays are zero-initialised and invalidated by bumping an epoch
/// counter, so a short truncated run touches only the nodes it reaches.
pub struct ShortestPaths<'g> {
    graph: &'g Graph,
    dist: Vec<f64>,
    reached: Vec<u32>,
    target: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<Entry>,
}

impl<'g> ShortestPaths<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.node_count();
        Self {
            graph,
            dist: vec![0.0; n],
            reached: vec![0; n],
            target: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn begin(&mut self) {
        if self.epoch == u32::MAX {
            self.reached.fill(0);
            self.target.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.heap.clear();
    }

    /// Settles nodes from `source` in order, calling `visit` on each; stops
    /// as soon as `visit` returns `false`. Returns `true` if the queue ran dry.
    fn run(&mut self, source: NodeId, mut visit: impl FnMut(&Self, NodeId, f64) -> bool) -> bool {
        let epoch = self.epoch;
        self.dist[source] = 0.0;
        self.reached[source] = epoch;
        self.heap.push(Entry { dist: 0.0, node: source });
        while let Some(Entry { dist: d, node: u }) = self.heap.pop() {
            if d > self.dist[u] {
                continue;
            }
            if !visit(self, u, d) {
                return false;
            }
            let (nbrs, costs) = self.graph.adjacency(u);
            for (&v, &c) in nbrs.iter().zip(costs) {
                let nd = d + c;
                if self.reached[v] != epoch || nd < self.dist[v] {
                    self.dist[v] = nd;
                    self.reached[v] = epoch;
                    self.heap.push(Entry { dist: nd, node: v });
                }
            }
        }
        true
    }

    /// Distances from `source` to every node (`f64::INFINITY` if unreachable).
    pub fn full(&mut self, source: NodeId) -> Vec<f64> {
        self.begin();
        let mut out = vec![f64::INFINITY; self.graph.node_count()];
        self.run(source, |_, v, d| {
            out[v] = d;
            true
        });
        out
    }

    /// Every reachable node in settlement order with its distance.
    pub fn full_order(&mut self, source: NodeId) -> Vec<(NodeId, f64)> {
        self.begin();
        let mut out = Vec::with_capacity(self.graph.node_count());
        self.run(source, |_, v, d| {
            out.push((v, d));
            true
        });
        out
    }

    /// Runs from `source` until every node in `targets` is settled.
    ///
    /// The settlement that completes target coverage is the last one
    /// recorded. Duplicate target ids are tolerated.
    pub fn truncated(&mut self, source: NodeId, targets: &[NodeId]) -> Result<DeterminedDistances, DijkstraError> {
        if targets.is_empty() {
            return Err(DijkstraError::NoTargets);
        }
        self.begin();
        let epoch = self.epoch;
        let mut remaining = 0usize;
        for &t in targets {
            if self.target[t] != epoch {
                self.target[t] = epoch;
                remaining += 1;
            }
        }
        let mut settled = Vec::new();
        self.run(source, |this, v, d| {
            settled.push((v, d));
            if this.target[v] == epoch {
                remaining -= 1;
            }
            remaining > 0
        });
        if remaining > 0 {
            return Err(DijkstraError::TargetUnreachable { origin: source, missing: remaining });
        }
        Ok(DeterminedDistances::new(source, settled))
    }
}

/// Shortest-path distance from `source` to every node.
pub fn dijkstra_full(graph: &Graph, source: NodeId) -> Vec<f64> {
    ShortestPaths::new(graph).full(source)
}

/// Dijkstra from `source` halted right after the last of `targets` settles.
pub fn dijkstra_truncated(
    graph: &Graph,
    source: NodeId,
    targets: &[NodeId],
) -> Result<DeterminedDistances, DijkstraError> {
    ShortestPaths::new(graph).truncated(source, targets)
}
