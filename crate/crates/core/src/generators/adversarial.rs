//! Hand-built instances on which the truncated solvers attain their worst ratios.

use super::GenError;
use crate::graph::Graph;
use crate::instance::Instance;

/// Complete graph on `m + 1` nodes where selective aggregation misses the
/// optimum.
///
/// Customers `0..m` are pairwise at cost 2; the extra node `m` is at cost 1
/// from customers `1..m` and `2 + epsilon` from customer 0. Every search from
/// a customer stops before reaching node `m` from customer 0, so node `m`
/// (optimal, value `m + 1 + epsilon`) is never fully settled.
pub fn gen_tight_sa(m: usize, epsilon: f64) -> Result<Instance, GenError> {
    if m < 4 {
        return Err(GenError::Infeasible(format!("tight instance needs m >= 4, got {m}")));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(GenError::Infeasible(format!("epsilon must be positive, got {epsilon}")));
    }
    let mut edges = Vec::with_capacity(m * (m + 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            edges.push((i, j, 2.0));
        }
        edges.push((i, m, if i == 0 { 2.0 + epsilon } else { 1.0 }));
    }
    let graph = Graph::from_edges(m + 1, &edges).expect("valid edges");
    Ok(Instance::unweighted(graph, (0..m).collect())?)
}

/// Five-node instance where both detour approximations return value 6
/// against an optimum of `5 + epsilon` at node 4.
pub fn gen_lb_instance(epsilon: f64) -> Result<Instance, GenError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GenError::Infeasible(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let edges = [
        (0, 1, 2.0),
        (0, 2, 2.0),
        (0, 3, 2.0),
        (1, 4, 1.0),
        (2, 4, 1.0),
        (3, 4, 1.0),
        (0, 4, 2.0 + epsilon),
    ];
    let graph = Graph::from_edges(5, &edges).expect("valid edges");
    Ok(Instance::unweighted(graph, vec![0, 1, 2, 3])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{brute_force_oracle, solve_tda_sa};

    #[test]
    fn tight_instance_shape() {
        let inst = gen_tight_sa(4, 0.01).unwrap();
        assert_eq!(inst.node_count(), 5);
        assert_eq!(inst.graph().edge_count(), 10);
        assert_eq!(inst.graph().edge_cost(0, 4), Some(2.01));
        assert_eq!(inst.graph().edge_cost(3, 4), Some(1.0));
        assert_eq!(inst.graph().edge_cost(1, 2), Some(2.0));
    }

    #[test]
    fn tight_instance_ratio() {
        let eps = 0.01;
        let inst = gen_tight_sa(4, eps).unwrap();
        let (node, opt) = brute_force_oracle(&inst).unwrap();
        assert_eq!(node, 4);
        assert!((opt - (5.0 + eps)).abs() < 1e-12);
        let ratio = solve_tda_sa(&inst).exact_value / opt;
        assert!((ratio - 6.0 / 5.01).abs() < 1e-12);
        assert!((ratio - 1.1976).abs() < 1e-4);
    }

    #[test]
    fn tight_ratio_approaches_bound() {
        let m = 10;
        let inst = gen_tight_sa(m, 1e-9).unwrap();
        let (_, opt) = brute_force_oracle(&inst).unwrap();
        let ratio = solve_tda_sa(&inst).exact_value / opt;
        assert!((ratio - (2.0 - 4.0 / 11.0)).abs() < 1e-8);
        assert!((ratio - 1.636).abs() < 1e-3);
    }

    #[test]
    fn oracle_optimum_is_the_extra_node() {
        for m in 4..9 {
            let inst = gen_tight_sa(m, 0.125).unwrap();
            assert_eq!(brute_force_oracle(&inst).unwrap(), (m, m as f64 + 1.125));
        }
    }

    #[test]
    fn lower_bound_instance() {
        let inst = gen_lb_instance(0.001).unwrap();
        assert_eq!(inst.graph().edge_count(), 7);
        assert_eq!(inst.customers(), &[0, 1, 2, 3]);
        assert!(gen_lb_instance(1.0).is_err());
        assert!(gen_lb_instance(0.0).is_err());
        assert!(gen_tight_sa(3, 0.1).is_err());
    }
}
