//! Cross-checks every solver on one instance against the oracle and the
//! known approximation guarantees.

use serde::Serialize;

use crate::exec::Execution;
use crate::harness::approximation_ratio;
use crate::instance::Instance;
use crate::solvers::{
    approx_eq, approx_le, brute_force_oracle_with_cap, objective_values, solve_with, Algorithm, CandidateSets,
    EvaluationKind, SolveError, SolveResult, REL_TOL,
};

/// `(1 + sqrt 5) / 2`, rounded up at the sixth decimal.
pub const GOLDEN_BOUND: f64 = 1.618034;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub optimum: f64,
    pub oracle_facility: usize,
    pub results: Vec<SolveResult>,
    /// `exact_value / optimum` per algorithm, in [`Algorithm::ALL`] order.
    pub ratios: Vec<(Algorithm, f64)>,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn ratio(&self, algorithm: Algorithm) -> Option<f64> {
        self.ratios.iter().find(|(a, _)| *a == algorithm).map(|&(_, r)| r)
    }
}

fn check(name: &'static str, failures: Vec<String>) -> Check {
    let passed = failures.is_empty();
    let detail = match failures.len() {
        0 => String::new(),
        1 => failures[0].clone(),
        k => format!("{} (+{} more)", failures[0], k - 1),
    };
    Check { name, passed, detail }
}

/// Runs every algorithm and the oracle, then checks the invariants that must
/// hold on any instance. Fails only if the oracle refuses the instance size.
pub fn verify_instance(instance: &Instance, oracle_cap: usize) -> Result<Verification, SolveError> {
    let (oracle_facility, optimum) = brute_force_oracle_with_cap(instance, oracle_cap)?;
    let m = instance.customer_count();
    let uniform = instance.has_uniform_weights();
    let results: Vec<SolveResult> =
        Algorithm::ALL.iter().map(|&a| solve_with(instance, a, Execution::Sequential)).collect();
    let get = |a: Algorithm| results.iter().find(|r| r.algorithm == a).expect("all algorithms ran");
    let ratios: Vec<(Algorithm, f64)> =
        results.iter().map(|r| (r.algorithm, approximation_ratio(r.exact_value, optimum))).collect();

    let mut checks = Vec::new();

    let exact = get(Algorithm::Exact).exact_value;
    let truncated = get(Algorithm::ExactTruncated).exact_value;
    checks.push(check(
        "exact matches oracle",
        if approx_eq(exact, optimum) { vec![] } else { vec![format!("exact {exact} vs oracle {optimum}")] },
    ));
    checks.push(check(
        "exact_truncated matches exact",
        if truncated == exact { vec![] } else { vec![format!("{truncated} vs {exact}")] },
    ));

    let mut floor = Vec::new();
    let mut bound = Vec::new();
    for &(a, r) in &ratios {
        if r < 1.0 - REL_TOL {
            floor.push(format!("{a} ratio {r}"));
        }
        let limit = match a {
            _ if !a.is_approximation() => 1.0,
            _ if m <= 3 => 1.0,
            Algorithm::Sa if uniform => 2.0 - 4.0 / (m as f64 + 1.0),
            Algorithm::Sa => 2.0,
            _ => GOLDEN_BOUND,
        };
        if r > limit + REL_TOL {
            bound.push(format!("{a} ratio {r} > {limit}"));
        }
    }
    checks.push(check("ratios at least 1", floor));
    checks.push(check("ratios within guarantee", bound));

    let mut estimates = Vec::new();
    for r in &results {
        let ok = match r.algorithm {
            Algorithm::Nna | Algorithm::Spa => approx_le(r.exact_value, r.estimated_value),
            _ => r.exact_value == r.estimated_value,
        };
        if !ok {
            estimates.push(format!("{}: estimated {} vs exact {}", r.algorithm, r.estimated_value, r.exact_value));
        }
    }
    checks.push(check("estimates bound true objective", estimates));

    let z = objective_values(instance, Execution::Sequential);
    let sets = CandidateSets::build(instance, Execution::Sequential);
    let sa = sets.evaluations(EvaluationKind::Sa);
    let nna = sets.evaluations(EvaluationKind::Nna);
    let spa = sets.evaluations(EvaluationKind::Spa);

    let mut nesting = Vec::new();
    for &c in instance.customers() {
        if sa.binary_search_by_key(&c, |e| e.node).is_err() {
            nesting.push(format!("customer {c} missing from V'"));
        }
    }
    for e in &sa {
        if nna.binary_search_by_key(&e.node, |x| x.node).is_err() {
            nesting.push(format!("node {} in V' but not V''", e.node));
        }
    }
    checks.push(check("candidate sets nest", nesting));

    let mut coincide = Vec::new();
    for e in &sa {
        let k = nna.binary_search_by_key(&e.node, |x| x.node).unwrap_or(0);
        let (zn, zs, zi) = (nna[k].value, spa[k].value, z[e.node]);
        if !(e.value == zi && zn == zi && zs == zi) {
            coincide.push(format!("node {}: z {zi}, sa {}, nna {zn}, spa {zs}", e.node, e.value));
        }
    }
    checks.push(check("evaluations coincide on V'", coincide));

    let mut upper = Vec::new();
    let mut dominance = Vec::new();
    for (a, b) in nna.iter().zip(&spa) {
        let zi = z[a.node];
        if !approx_le(zi, a.value) || !approx_le(zi, b.value) {
            upper.push(format!("node {}: z {zi}, nna {}, spa {}", a.node, a.value, b.value));
        }
        if !(b.value <= a.value) {
            dominance.push(format!("node {}: spa {} > nna {}", a.node, b.value, a.value));
        }
    }
    checks.push(check("approximations bound z from above", upper));
    checks.push(check("spa dominates nna", dominance));

    let min = |es: &[crate::solvers::CandidateEvaluation]| es.iter().map(|e| e.value).fold(f64::INFINITY, f64::min);
    let (ms, mn, mp) = (min(&sa), min(&nna), min(&spa));
    checks.push(check(
        "minima are monotone",
        if mp <= mn && mn <= ms { vec![] } else { vec![format!("spa {mp}, nna {mn}, sa {ms}")] },
    ));

    Ok(Verification { optimum, oracle_facility, results, ratios, checks })
}
