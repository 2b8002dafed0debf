//! Immutable CSR adjacency for undirected graphs with non-negative edge costs.

use std::collections::VecDeque;

use thiserror::Error;

/// Node identifier: a 0-based index into `[0, n)`.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("edge ({u}, {v}) has negative or non-finite cost {cost}")]
    NegativeCost { u: NodeId, v: NodeId, cost: f64 },
    #[error("node id {id} out of range for a graph with {n} nodes")]
    NodeIdOutOfRange { id: NodeId, n: usize },
    #[error("duplicate edge between {u} and {v}")]
    DuplicateEdge { u: NodeId, v: NodeId },
}

/// Undirected weighted graph in compressed sparse row form.
///
/// Every undirected edge `{u, v}` is stored as two arcs, one in each
/// endpoint's adjacency list, and every adjacency list is sorted by neighbor
/// id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    costs: Vec<f64>,
}

impl Graph {
    /// Builds a graph from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId, f64)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut degree = vec![0usize; n];
        for &(u, v, cost) in edges {
            check_edge(n, u, v, cost)?;
            degree[u] += 1;
            degree[v] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let arcs = offsets[n];
        let mut neighbors = vec![0; arcs];
        let mut costs = vec![0.0; arcs];
        let mut cursor = offsets[..n].to_vec();
        for &(u, v, cost) in edges {
            for (a, b) in [(u, v), (v, u)] {
                neighbors[cursor[a]] = b;
                costs[cursor[a]] = cost;
                cursor[a] += 1;
            }
        }

        let mut scratch: Vec<(NodeId, f64)> = Vec::new();
        for u in 0..n {
            let range = offsets[u]..offsets[u + 1];
            scratch.clear();
            scratch.extend(neighbors[range.clone()].iter().copied().zip(costs[range.clone()].iter().copied()));
            scratch.sort_unstable_by_key(|&(v, _)| v);
            if let Some(w) = scratch.windows(2).find(|w| w[0].0 == w[1].0) {
                let v = w[0].0;
                return Err(GraphError::DuplicateEdge { u: u.min(v), v: u.max(v) });
            }
            for (k, &(v, c)) in scratch.iter().enumerate() {
                neighbors[range.start + k] = v;
                costs[range.start + k] = c;
            }
        }

        Ok(Self { offsets, neighbors, costs })
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Number of stored arcs (twice the edge count).
    pub fn arc_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Neighbors of `u` with the connecting edge cost, in ascending neighbor id order.
    #[inline]
    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.neighbors[range.clone()].iter().copied().zip(self.costs[range].iter().copied())
    }

    #[inline]
    pub(crate) fn adjacency(&self, u: NodeId) -> (&[NodeId], &[f64]) {
        let range = self.offsets[u]..self.offsets[u + 1];
        (&self.neighbors[range.clone()], &self.costs[range])
    }

    /// Cost of edge `{u, v}` if present.
    pub fn edge_cost(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let (nbrs, costs) = self.adjacency(u);
        nbrs.binary_search(&v).ok().map(|k| costs[k])
    }

    /// Each undirected edge once as `(u, v, cost)` with `u < v`, ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).filter(move |&(v, _)| u < v).map(move |(v, c)| (u, v, c)))
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_order(0).len() == self.node_count()
    }

    /// Breadth-first visiting order from `source`; neighbors are expanded in
    /// ascending id order.
    pub fn bfs_order(&self, source: NodeId) -> Vec<NodeId> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[source] = true;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in self.adjacency(u).0 {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }
}

fn check_edge(n: usize, u: NodeId, v: NodeId, cost: f64) -> Result<(), GraphError> {
    for id in [u, v] {
        if id >= n {
            return Err(GraphError::NodeIdOutOfRange { id, n });
        }
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    if !(cost >= 0.0) || !cost.is_finite() {
        return Err(GraphError::NegativeCost { u, v, cost });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_stored_both_ways() {
        let g = Graph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.edge_cost(0, 1), Some(1.0));
        assert_eq!(g.edge_cost(1, 0), Some(1.0));
    }

    #[test]
    fn lower_bound_edge_list_has_fourteen_arcs() {
        let eps = 0.001;
        let edges = [
            (0, 1, 2.0),
            (0, 2, 2.0),
            (0, 3, 2.0),
            (1, 4, 1.0),
            (2, 4, 1.0),
            (3, 4, 1.0),
            (0, 4, 2.0 + eps),
        ];
        let g = Graph::from_edges(5, &edges).unwrap();
        assert_eq!(g.arc_count(), 14);
        assert_eq!(g.edge_count(), 7);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_invalid_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 1, 1.0), (0, 1, 2.0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1, 1.0), (1, 0, 2.0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(Graph::from_edges(3, &[(2, 2, 1.0)]), Err(GraphError::SelfLoop(2)));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1, -0.5)]),
            Err(GraphError::NegativeCost { .. })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1, f64::NAN)]),
            Err(GraphError::NegativeCost { .. })
        ));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3, 1.0)]),
            Err(GraphError::NodeIdOutOfRange { id: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(0, &[]), Err(GraphError::Empty));
    }

    #[test]
    fn zero_costs_are_allowed() {
        let g = Graph::from_edges(2, &[(0, 1, 0.0)]).unwrap();
        assert_eq!(g.edge_cost(0, 1), Some(0.0));
    }

    #[test]
    fn adjacency_is_sorted_regardless_of_input_order() {
        let a = Graph::from_edges(4, &[(0, 3, 1.0), (0, 1, 2.0), (2, 0, 3.0)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 0, 3.0), (0, 1, 2.0), (3, 0, 1.0)]).unwrap();
        assert_eq!(a, b);
        let nbrs: Vec<_> = a.neighbors(0).map(|(v, _)| v).collect();
        assert_eq!(nbrs, vec![1, 2, 3]);
        assert_eq!(a.edges().collect::<Vec<_>>(), vec![(0, 1, 2.0), (0, 2, 3.0), (0, 3, 1.0)]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::from_edges(1, &[]).unwrap().is_connected());
        assert!(!Graph::from_edges(3, &[(0, 1, 1.0)]).unwrap().is_connected());
    }
}
