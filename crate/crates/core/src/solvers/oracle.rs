//! Reference optimum computed without the Dijkstra engine.

use super::{argmin, SolveError};
use crate::graph::NodeId;
use crate::instance::Instance;

/// Largest node count the oracle accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 2000;

/// Exact optimum via Bellman-Ford from every customer.
pub fn brute_force_oracle(instance: &Instance) -> Result<(NodeId, f64), SolveError> {
    brute_force_oracle_with_cap(instance, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_oracle_with_cap(instance: &Instance, cap: usize) -> Result<(NodeId, f64), SolveError> {
    let n = instance.node_count();
    if n > cap {
        return Err(SolveError::SizeGuard { n, cap });
    }
    let edges: Vec<_> = instance.graph().edges().collect();
    let mut z = vec![0.0; n];
    let mut dist = vec![f64::INFINITY; n];
    for (&source, &w) in instance.customers().iter().zip(instance.weights()) {
        dist.fill(f64::INFINITY);
        dist[source] = 0.0;
        // At most n - 1 rounds; stop early at a fixed point.
        for _ in 1..n.max(2) {
            let mut changed = false;
            for &(u, v, c) in &edges {
                if dist[u] + c < dist[v] {
                    dist[v] = dist[u] + c;
                    changed = true;
                }
                if dist[v] + c < dist[u] {
                    dist[u] = dist[v] + c;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for (acc, &d) in z.iter_mut().zip(&dist) {
            *acc += w * d;
        }
    }
    Ok(argmin(z).expect("graph has nodes"))
}
