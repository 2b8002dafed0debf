//! 1-median solvers.
//!
//! All solvers break argmin ties toward the smallest node id. Objective
//! values are accumulated in customer order starting from `0.0`, so two
//! solvers that see the same per-customer distances report bit-identical
//! values.

mod candidates;
mod exact;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dijkstra::ShortestPaths;
use crate::exec::Execution;
use crate::graph::NodeId;
use crate::instance::Instance;

pub use candidates::{evaluate_candidates, CandidateEvaluation, CandidateSets, EvaluationKind};
pub use exact::{objective_values, solve_exact, solve_exact_truncated};
pub use oracle::{brute_force_oracle, brute_force_oracle_with_cap, DEFAULT_ORACLE_CAP};

/// Relative tolerance for comparing objective values computed along
/// different arithmetic paths.
pub const REL_TOL: f64 = 1e-9;

/// `a <= b` up to relative tolerance [`REL_TOL`].
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * a.abs().max(b.abs())
}

/// `a == b` up to relative tolerance [`REL_TOL`].
pub fn approx_eq(a: f64, b: f64) -> bool {
    approx_le(a, b) && approx_le(b, a)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("oracle refused an instance with {n} nodes (cap {cap})")]
    SizeGuard { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Exact,
    ExactTruncated,
    Sa,
    Nna,
    Spa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Exact, Algorithm::ExactTruncated, Algorithm::Sa, Algorithm::Nna, Algorithm::Spa];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::ExactTruncated => "exact_truncated",
            Algorithm::Sa => "sa",
            Algorithm::Nna => "nna",
            Algorithm::Spa => "spa",
        }
    }

    pub fn is_approximation(self) -> bool {
        matches!(self, Algorithm::Sa | Algorithm::Nna | Algorithm::Spa)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "exact" => Ok(Algorithm::Exact),
            "exact_truncated" => Ok(Algorithm::ExactTruncated),
            "sa" | "tda_sa" => Ok(Algorithm::Sa),
            "nna" | "tda_nna" => Ok(Algorithm::Nna),
            "spa" | "tda_spa" => Ok(Algorithm::Spa),
            _ => Err(format!("unknown algorithm `{s}` (expected exact, exact_truncated, sa, nna or spa)")),
        }
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub facility: NodeId,
    /// The minimum of the solver's own candidate evaluation.
    pub estimated_value: f64,
    /// True objective of `facility`.
    pub exact_value: f64,
    pub candidate_count: usize,
    /// Nodes settled across every shortest-path run of the solve.
    pub settled_total: usize,
    pub wall_time: Duration,
}

/// Runs `algorithm` with the default execution mode.
pub fn solve(instance: &Instance, algorithm: Algorithm) -> SolveResult {
    solve_with(instance, algorithm, Execution::default())
}

pub fn solve_with(instance: &Instance, algorithm: Algorithm, exec: Execution) -> SolveResult {
    match algorithm {
        Algorithm::Exact => exact::solve_exact_with(instance, exec),
        Algorithm::ExactTruncated => exact::solve_exact_truncated_with(instance, exec),
        Algorithm::Sa => candidates::solve_tda_sa_with(instance, exec),
        Algorithm::Nna => candidates::solve_tda_nna_with(instance, exec),
        Algorithm::Spa => candidates::solve_tda_spa_with(instance, exec),
    }
}

/// Selective aggregation: argmin over nodes settled from every customer.
pub fn solve_tda_sa(instance: &Instance) -> SolveResult {
    candidates::solve_tda_sa_with(instance, Execution::default())
}

/// Nearest-neighbor approximation over nodes settled from some customer.
pub fn solve_tda_nna(instance: &Instance) -> SolveResult {
    candidates::solve_tda_nna_with(instance, Execution::default())
}

/// Shortest-path approximation over nodes settled from some customer.
pub fn solve_tda_spa(instance: &Instance) -> SolveResult {
    candidates::solve_tda_spa_with(instance, Execution::default())
}

/// Exact objective `z(node)` from one truncated run rooted at `node`.
pub fn evaluate_node(instance: &Instance, node: NodeId) -> f64 {
    let mut sp = ShortestPaths::new(instance.graph());
    evaluate_node_in(&mut sp, instance, node).0
}

/// Returns the objective and the number of nodes settled to compute it.
pub(crate) fn evaluate_node_in(sp: &mut ShortestPaths<'_>, instance: &Instance, node: NodeId) -> (f64, usize) {
    let run = sp
        .truncated(node, instance.customers())
        .expect("instance graphs are connected");
    let mut z = 0.0;
    for (&c, &w) in instance.customers().iter().zip(instance.weights()) {
        z += w * run.distance(c).expect("customer settled");
    }
    (z, run.len())
}

/// Index of the smallest value; ties go to the earliest position.
pub(crate) fn argmin(values: impl IntoIterator<Item = f64>) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (k, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if !(v < b) => {}
            _ => best = Some((k, v)),
        }
    }
    best
}
