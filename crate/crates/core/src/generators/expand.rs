use super::GenError;
use crate::graph::{Graph, NodeId};
use crate::instance::Instance;

/// Default cap on the total customer weight [`expand_weighted`] accepts.
pub const DEFAULT_EXPANSION_CAP: usize = 100_000;

/// An unweighted instance equivalent to a weighted one.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub instance: Instance,
    /// Expanded node id standing for each original node.
    pub representative: Vec<NodeId>,
    /// Original node each expanded node descends from.
    pub origin: Vec<NodeId>,
}

/// Replaces every customer of integer weight `w` by `w` unit-weight
/// customers joined by zero-cost edges.
///
/// The original customer node keeps its id and becomes one of the `w`
/// copies; the `w - 1` new copies get fresh ids from `n` upward and are wired
/// to the customer's original neighbors at the original costs.
pub fn expand_weighted(instance: &Instance) -> Result<Expansion, GenError> {
    expand_weighted_with_cap(instance, DEFAULT_EXPANSION_CAP)
}

pub fn expand_weighted_with_cap(instance: &Instance, cap: usize) -> Result<Expansion, GenError> {
    let mut multiplicity = Vec::with_capacity(instance.customer_count());
    for (&customer, &weight) in instance.customers().iter().zip(instance.weights()) {
        if !(weight >= 1.0) || weight.fract() != 0.0 || !weight.is_finite() {
            return Err(GenError::NonIntegerWeight { customer, weight });
        }
        multiplicity.push(weight as usize);
    }
    let total: usize = multiplicity.iter().sum();
    if total > cap {
        return Err(GenError::CapExceeded { n: total, cap });
    }

    let graph = instance.graph();
    let n = graph.node_count();
    let mut edges: Vec<(NodeId, NodeId, f64)> = graph.edges().collect();
    let mut origin: Vec<NodeId> = (0..n).collect();
    let mut customers = Vec::with_capacity(total);
    for (&j, &w) in instance.customers().iter().zip(&multiplicity) {
        let mut clique = vec![j];
        for _ in 1..w {
            let copy = origin.len();
            origin.push(j);
            for (u, c) in graph.neighbors(j) {
                edges.push((u, copy, c));
            }
            clique.push(copy);
        }
        for (a, &x) in clique.iter().enumerate() {
            for &y in &clique[a + 1..] {
                edges.push((x, y, 0.0));
            }
        }
        customers.extend_from_slice(&clique);
    }

    let expanded = Graph::from_edges(origin.len(), &edges).expect("expansion preserves graph invariants");
    Ok(Expansion {
        instance: Instance::unweighted(expanded, customers)?,
        representative: (0..n).collect(),
        origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dijkstra::dijkstra_full;
    use crate::solvers::brute_force_oracle;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn unit_weights_are_identity() {
        let inst = Instance::unweighted(path3(), vec![0, 2]).unwrap();
        let e = expand_weighted(&inst).unwrap();
        assert_eq!(e.instance, inst);
        assert_eq!(e.origin, vec![0, 1, 2]);
    }

    #[test]
    fn weighted_path_preserves_optimum() {
        let inst = Instance::new(path3(), vec![0, 2], vec![2.0, 1.0]).unwrap();
        let e = expand_weighted(&inst).unwrap();
        assert_eq!(e.instance.customer_count(), 3);
        assert_eq!(e.instance.node_count(), 4);
        let (_, before) = brute_force_oracle(&inst).unwrap();
        let (_, after) = brute_force_oracle(&e.instance).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn customer_count_is_total_weight() {
        let g = Graph::from_edges(4, &[(0, 1, 0.5), (1, 2, 0.25), (2, 3, 1.0), (3, 0, 2.0)]).unwrap();
        let inst = Instance::new(g, vec![0, 2], vec![3.0, 2.0]).unwrap();
        let e = expand_weighted(&inst).unwrap();
        assert_eq!(e.instance.customer_count(), 5);
        assert_eq!(e.instance.node_count(), 7);
        // Copies sit at distance zero from their original and keep its distances.
        let original = dijkstra_full(inst.graph(), 1);
        let expanded = dijkstra_full(e.instance.graph(), 1);
        for (v, &o) in e.origin.iter().enumerate() {
            assert_eq!(expanded[v], original[o]);
        }
    }

    #[test]
    fn rejects_fractional_and_oversized_weights() {
        let inst = Instance::new(path3(), vec![0], vec![1.5]).unwrap();
        assert!(matches!(expand_weighted(&inst), Err(GenError::NonIntegerWeight { .. })));
        let inst = Instance::new(path3(), vec![0, 1], vec![0.0, 1.0]).unwrap();
        assert!(matches!(expand_weighted(&inst), Err(GenError::NonIntegerWeight { .. })));
        let inst = Instance::new(path3(), vec![0], vec![50.0]).unwrap();
        assert_eq!(expand_weighted_with_cap(&inst, 10).unwrap_err(), GenError::CapExceeded { n: 50, cap: 10 });
    }
}
