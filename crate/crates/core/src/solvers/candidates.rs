//! Truncated per-customer searches and the candidate evaluations built on them.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{argmin, evaluate_node_in, Algorithm, SolveResult};
use crate::dijkstra::{DeterminedDistances, ShortestPaths};
use crate::exec::{map_sources, Execution};
use crate::graph::NodeId;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvaluationKind {
    Exact,
    Sa,
    Nna,
    Spa,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateEvaluation {
    pub node: NodeId,
    pub value: f64,
    pub kind: EvaluationKind,
}

/// Results of running a truncated search from every customer until all
/// customers are settled, grouped by settled node.
///
/// `nodes` is the union of settled nodes (ascending); for each of them the
/// customers it was settled from, with the distance, are stored contiguously.
#[derive(Debug, Clone)]
pub struct CandidateSets {
    weights: Vec<f64>,
    runs: Vec<DeterminedDistances>,
    nodes: Vec<NodeId>,
    offsets: Vec<usize>,
    entries: Vec<(usize, f64)>,
    // between[j * m + k]: distance from customer j to customer k, from j's run.
    between: Vec<f64>,
}

impl CandidateSets {
    pub fn build(instance: &Instance, exec: Execution) -> Self {
        let customers = instance.customers();
        let runs = map_sources(instance.graph(), customers, exec, |sp, s| {
            sp.truncated(s, customers).expect("instance graphs are connected")
        });
        Self::from_runs(instance, runs)
    }

    fn from_runs(instance: &Instance, runs: Vec<DeterminedDistances>) -> Self {
        let customers = instance.customers();
        let m = customers.len();
        let mut between = Vec::with_capacity(m * m);
        for run in &runs {
            between.extend(customers.iter().map(|&c| run.distance(c).expect("customer settled")));
        }

        let mut triples: Vec<(NodeId, usize, f64)> = runs
            .iter()
            .enumerate()
            .flat_map(|(j, run)| run.by_node().iter().map(move |&(v, d)| (v, j, d)))
            .collect();
        triples.sort_unstable_by_key(|&(v, j, _)| (v, j));

        let mut nodes = Vec::new();
        let mut offsets = vec![0];
        let mut entries = Vec::with_capacity(triples.len());
        for (k, &(v, j, d)) in triples.iter().enumerate() {
            if k > 0 && triples[k - 1].0 != v {
                offsets.push(entries.len());
            }
            if nodes.last() != Some(&v) {
                nodes.push(v);
            }
            entries.push((j, d));
        }
        offsets.push(entries.len());

        Self { weights: instance.weights().to_vec(), runs, nodes, offsets, entries, between }
    }

    pub fn customer_count(&self) -> usize {
        self.weights.len()
    }

    pub fn runs(&self) -> &[DeterminedDistances] {
        &self.runs
    }

    pub fn settled_total(&self) -> usize {
        self.runs.iter().map(DeterminedDistances::len).sum()
    }

    /// Nodes settled from at least one customer, ascending.
    pub fn any_settled(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Nodes settled from every customer, ascending.
    pub fn all_settled(&self) -> Vec<NodeId> {
        let m = self.customer_count();
        (0..self.nodes.len()).filter(|&k| self.settled_from(k) == m).map(|k| self.nodes[k]).collect()
    }

    /// Number of customers the `k`-th candidate was settled from.
    pub fn settled_from(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }

    fn group(&self, k: usize) -> &[(usize, f64)] {
        &self.entries[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Distances to the `k`-th candidate, indexed by customer, with
    /// `INFINITY` where the candidate was not settled.
    fn column(&self, k: usize, col: &mut Vec<f64>) {
        col.clear();
        col.resize(self.customer_count(), f64::INFINITY);
        for &(j, d) in self.group(k) {
            col[j] = d;
        }
    }

    fn z_sa(&self, k: usize) -> Option<f64> {
        if self.settled_from(k) != self.customer_count() {
            return None;
        }
        let mut z = 0.0;
        for &(j, d) in self.group(k) {
            z += self.weights[j] * d;
        }
        Some(z)
    }

    fn z_nna(&self, k: usize, col: &mut Vec<f64>) -> f64 {
        self.column(k, col);
        let m = self.customer_count();
        let (near, near_dist) = argmin(col.iter().copied()).expect("at least one customer");
        let mut z = 0.0;
        for (j, &d) in col.iter().enumerate() {
            let approx = if d.is_finite() { d } else { self.between[j * m + near] + near_dist };
            z += self.weights[j] * approx;
        }
        z
    }

    fn z_spa(&self, k: usize, col: &mut Vec<f64>) -> f64 {
        self.column(k, col);
        let m = self.customer_count();
        let group = self.group(k);
        let mut z = 0.0;
        for (j, &d) in col.iter().enumerate() {
            let approx = if d.is_finite() {
                d
            } else {
                let row = &self.between[j * m..(j + 1) * m];
                group.iter().map(|&(via, dv)| row[via] + dv).fold(f64::INFINITY, f64::min)
            };
            z += self.weights[j] * approx;
        }
        z
    }

    /// Evaluations of one kind over its candidate set: `V'` for
    /// [`EvaluationKind::Sa`], `V''` for the approximations.
    pub fn evaluations(&self, kind: EvaluationKind) -> Vec<CandidateEvaluation> {
        let mut col = Vec::new();
        let mut out = Vec::new();
        for (k, &node) in self.nodes.iter().enumerate() {
            let value = match kind {
                EvaluationKind::Sa => match self.z_sa(k) {
                    Some(z) => z,
                    None => continue,
                },
                EvaluationKind::Nna => self.z_nna(k, &mut col),
                EvaluationKind::Spa => self.z_spa(k, &mut col),
                EvaluationKind::Exact => panic!("exact evaluations are not derived from truncated runs"),
            };
            out.push(CandidateEvaluation { node, value, kind });
        }
        out
    }
}

/// Candidate evaluations of `kind` for `instance`: every node for
/// [`EvaluationKind::Exact`], otherwise the kind's candidate set.
pub fn evaluate_candidates(instance: &Instance, kind: EvaluationKind) -> Vec<CandidateEvaluation> {
    match kind {
        EvaluationKind::Exact => super::objective_values(instance, Execution::default())
            .into_iter()
            .enumerate()
            .map(|(node, value)| CandidateEvaluation { node, value, kind })
            .collect(),
        _ => CandidateSets::build(instance, Execution::default()).evaluations(kind),
    }
}

fn pick(evals: &[CandidateEvaluation]) -> (NodeId, f64) {
    let (k, value) = argmin(evals.iter().map(|e| e.value)).expect("customers are always candidates");
    (evals[k].node, value)
}

pub(crate) fn solve_tda_sa_with(instance: &Instance, exec: Execution) -> SolveResult {
    let start = Instant::now();
    let sets = CandidateSets::build(instance, exec);
    let evals = sets.evaluations(EvaluationKind::Sa);
    let (facility, value) = pick(&evals);
    SolveResult {
        algorithm: Algorithm::Sa,
        facility,
        estimated_value: value,
        exact_value: value,
        candidate_count: evals.len(),
        settled_total: sets.settled_total(),
        wall_time: start.elapsed(),
    }
}

fn solve_approx(instance: &Instance, exec: Execution, kind: EvaluationKind) -> SolveResult {
    let start = Instant::now();
    let sets = CandidateSets::build(instance, exec);
    let evals = sets.evaluations(kind);
    let (facility, estimated) = pick(&evals);
    let mut sp = ShortestPaths::new(instance.graph());
    let (exact, settled) = evaluate_node_in(&mut sp, instance, facility);
    SolveResult {
        algorithm: if kind == EvaluationKind::Nna { Algorithm::Nna } else { Algorithm::Spa },
        facility,
        estimated_value: estimated,
        exact_value: exact,
        candidate_count: evals.len(),
        settled_total: sets.settled_total() + settled,
        wall_time: start.elapsed(),
    }
}

pub(crate) fn solve_tda_nna_with(instance: &Instance, exec: Execution) -> SolveResult {
    solve_approx(instance, exec, EvaluationKind::Nna)
}

pub(crate) fn solve_tda_spa_with(instance: &Instance, exec: Execution) -> SolveResult {
    solve_approx(instance, exec, EvaluationKind::Spa)
}
