use std::time::Instant;

use super::candidates::CandidateSets;
use super::{argmin, Algorithm, SolveResult};
use crate::dijkstra::DeterminedDistances;
use crate::exec::{map_sources, Execution};
use crate::graph::NodeId;
use crate::instance::Instance;

/// Objective `z(i)` for every node, from one full search per customer.
///
/// Customers are processed in batches of one search per worker; each batch
/// is folded into a single n-length accumulator in customer order.
pub fn objective_values(instance: &Instance, exec: Execution) -> Vec<f64> {
    let graph = instance.graph();
    let mut acc = vec![0.0; graph.node_count()];
    let batch = batch_size(exec);
    for (sources, weights) in instance.customers().chunks(batch).zip(instance.weights().chunks(batch)) {
        let rows = map_sources(graph, sources, exec, |sp, s| sp.full(s));
        for (row, &w) in rows.iter().zip(weights) {
            for (a, &d) in acc.iter_mut().zip(row) {
                *a += w * d;
            }
        }
    }
    acc
}

fn batch_size(exec: Execution) -> usize {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => rayon::current_num_threads().max(1),
        _ => 1,
    }
}

/// Exhaustive baseline: full searches from every customer, argmin over all nodes.
pub fn solve_exact(instance: &Instance) -> SolveResult {
    solve_exact_with(instance, Execution::default())
}

pub(crate) fn solve_exact_with(instance: &Instance, exec: Execution) -> SolveResult {
    let start = Instant::now();
    let z = objective_values(instance, exec);
    let (facility, value) = argmin(z.iter().copied()).expect("graph has nodes");
    let n = instance.node_count();
    SolveResult {
        algorithm: Algorithm::Exact,
        facility,
        estimated_value: value,
        exact_value: value,
        candidate_count: n,
        settled_total: n * instance.customer_count(),
        wall_time: start.elapsed(),
    }
}

/// Exact solver that only completes the truncated searches as far as needed.
///
/// For uniform weights some optimal node is settled from at least two
/// customers, so candidates are those nodes plus the customers themselves;
/// otherwise every node settled from at least one customer is a candidate.
/// Each customer's search is then extended until all candidates are settled.
pub fn solve_exact_truncated(instance: &Instance) -> SolveResult {
    solve_exact_truncated_with(instance, Execution::default())
}

pub(crate) fn solve_exact_truncated_with(instance: &Instance, exec: Execution) -> SolveResult {
    let start = Instant::now();
    let customers = instance.customers();
    let sets = CandidateSets::build(instance, exec);
    let min_settled = if instance.has_uniform_weights() { 2 } else { 1 };

    let mut candidates: Vec<NodeId> = sets
        .any_settled()
        .iter()
        .enumerate()
        .filter(|&(k, _)| sets.settled_from(k) >= min_settled)
        .map(|(_, &v)| v)
        .collect();
    candidates.extend_from_slice(customers);
    candidates.sort_unstable();
    candidates.dedup();

    let mut settled_total = sets.settled_total();
    let pending: Vec<usize> = sets
        .runs()
        .iter()
        .enumerate()
        .filter(|(_, run)| !candidates.iter().all(|&c| run.is_settled(c)))
        .map(|(j, _)| j)
        .collect();
    let pending_sources: Vec<NodeId> = pending.iter().map(|&j| customers[j]).collect();
    let extended = map_sources(instance.graph(), &pending_sources, exec, |sp, s| {
        sp.truncated(s, &candidates).expect("instance graphs are connected")
    });
    settled_total += extended.iter().map(DeterminedDistances::len).sum::<usize>();

    let mut runs: Vec<&DeterminedDistances> = sets.runs().iter().collect();
    for (&j, run) in pending.iter().zip(&extended) {
        runs[j] = run;
    }

    let values = candidates.iter().map(|&c| {
        let mut z = 0.0;
        for (run, &w) in runs.iter().zip(instance.weights()) {
            z += w * run.distance(c).expect("candidate settled from every customer");
        }
        z
    });
    let (k, value) = argmin(values).expect("customers are always candidates");

    SolveResult {
        algorithm: Algorithm::ExactTruncated,
        facility: candidates[k],
        estimated_value: value,
        exact_value: value,
        candidate_count: candidates.len(),
        settled_total,
        wall_time: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_lb_instance, gen_tight_sa};
    use crate::graph::Graph;
    use crate::solvers::brute_force_oracle;

    #[test]
    fn lower_bound_instance_optimum() {
        let eps = 0.001;
        let inst = gen_lb_instance(eps).unwrap();
        let r = solve_exact(&inst);
        assert_eq!(r.facility, 4);
        assert!((r.exact_value - (5.0 + eps)).abs() < 1e-12);
        assert_eq!(r.candidate_count, 5);
        let t = solve_exact_truncated(&inst);
        assert_eq!(t.facility, 4);
        assert!((t.exact_value - (5.0 + eps)).abs() < 1e-12);
    }

    #[test]
    fn tight_instance_optimum() {
        let inst = gen_tight_sa(4, 0.01).unwrap();
        let r = solve_exact(&inst);
        assert_eq!(r.facility, 4);
        assert!((r.exact_value - 5.01).abs() < 1e-12);
        assert_eq!(brute_force_oracle(&inst).unwrap().0, 4);
    }

    #[test]
    fn single_customer() {
        let g = Graph::from_edges(4, &[(0, 1, 1.0), (1, 2, 0.5), (2, 3, 0.25)]).unwrap();
        let inst = Instance::unweighted(g, vec![2]).unwrap();
        for r in [solve_exact(&inst), solve_exact_truncated(&inst)] {
            assert_eq!((r.facility, r.exact_value), (2, 0.0));
        }
    }

    #[test]
    fn weighted_path() {
        let g = Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let inst = Instance::new(g, vec![0, 2], vec![2.0, 1.0]).unwrap();
        let r = solve_exact_truncated(&inst);
        assert_eq!((r.facility, r.exact_value), (0, 2.0));
        assert_eq!(objective_values(&inst, Execution::Sequential), vec![2.0, 3.0, 4.0]);
    }

    #[test]
    fn execution_modes_agree_bitwise() {
        let inst = gen_tight_sa(9, 0.3).unwrap();
        assert_eq!(
            objective_values(&inst, Execution::Sequential),
            objective_values(&inst, Execution::Parallel)
        );
    }
}
