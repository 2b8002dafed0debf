//! Batch experiments: generate instances cell by cell, run the selected
//! solvers, and compare them against an exact reference.

mod config;
mod report;
mod summary;

use std::io;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_items, Execution};
use crate::generators::{GenError, GenSpec};
use crate::solvers::{
    approx_eq, brute_force_oracle_with_cap, solve_with, Algorithm, SolveError, SolveResult, REL_TOL,
};

pub use config::{derive_seed, Cell, CellGrid, OutputPaths, SuiteConfig};
pub use report::{export_report, summary_to_csv, summary_to_json, ReportFormat, CSV_HEADER};
pub use summary::{summarize, HistogramBin, RatioHistogram, RatioSeries, Summary, SummaryRow, HISTOGRAM_BIN_WIDTH};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid suite config: {0}")]
    Config(String),
    #[error("cell {family} n={n} m={m}: {source}")]
    Generation { family: String, n: usize, m: usize, source: GenError },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("reference mismatch on {spec:?}: exact {exact} vs oracle {oracle}")]
    ReferenceMismatch { spec: GenSpec, exact: f64, oracle: f64 },
    #[error("no records to summarize")]
    EmptyInput,
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One algorithm's run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub result: SolveResult,
    /// `exact_value / reference`, when a reference is available.
    pub ratio: Option<f64>,
    pub suboptimal: bool,
}

/// All trials on one generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub cell: usize,
    pub replicate: usize,
    pub spec: GenSpec,
    pub oracle_value: Option<f64>,
    /// Optimum used for ratios: the exact solver's value if it ran, else the oracle's.
    pub reference: Option<f64>,
    pub trials: Vec<Trial>,
}

impl ExperimentRecord {
    pub fn trial(&self, algorithm: Algorithm) -> Option<&Trial> {
        self.trials.iter().find(|t| t.result.algorithm == algorithm)
    }
}

/// `value / optimum`, with `0 / 0` taken as 1.
pub fn approximation_ratio(value: f64, optimum: f64) -> f64 {
    if optimum == 0.0 {
        if value == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        value / optimum
    }
}

/// Runs the whole suite. Replicates within a cell run on the rayon pool;
/// records come back in `(cell, replicate)` order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<ExperimentRecord>, HarnessError> {
    run_suite_with(config, Execution::default(), |_, _, _| {})
}

/// As [`run_suite`]; `progress` is called after each cell with its index,
/// the cell, and its records.
pub fn run_suite_with(
    config: &SuiteConfig,
    exec: Execution,
    mut progress: impl FnMut(usize, &Cell, &[ExperimentRecord]),
) -> Result<Vec<ExperimentRecord>, HarnessError> {
    config.validate()?;
    let mut records = Vec::new();
    for (index, cell) in config.cells().iter().enumerate() {
        let specs: Vec<(usize, GenSpec)> = (0..config.instances_per_cell)
            .map(|rep| (rep, GenSpec::new(cell.family, cell.n, cell.m, derive_seed(config.base_seed, index, rep))))
            .collect();
        let cell_records = map_items(specs, exec, |(rep, spec)| run_one(config, index, rep, spec))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        progress(index, cell, &cell_records);
        records.extend(cell_records);
    }
    Ok(records)
}

fn run_one(config: &SuiteConfig, cell: usize, replicate: usize, spec: GenSpec) -> Result<ExperimentRecord, HarnessError> {
    let instance = spec.generate().map_err(|source| HarnessError::Generation {
        family: spec.family.to_string(),
        n: spec.n,
        m: spec.m,
        source,
    })?;

    let oracle_value = if config.oracle_enabled_for(spec.n) {
        Some(brute_force_oracle_with_cap(&instance, config.oracle_cap)?.1)
    } else {
        None
    };

    let results: Vec<SolveResult> = config
        .algorithms
        .iter()
        .map(|&algorithm| {
            let mut runs: Vec<SolveResult> =
                (0..config.timing_repeats).map(|_| solve_with(&instance, algorithm, Execution::Sequential)).collect();
            let mut times: Vec<Duration> = runs.iter().map(|r| r.wall_time).collect();
            times.sort_unstable();
            let mut result = runs.swap_remove(0);
            result.wall_time = times[times.len() / 2];
            result
        })
        .collect();

    let exact = results.iter().find(|r| r.algorithm == Algorithm::Exact).map(|r| r.exact_value);
    if let (Some(exact), Some(oracle)) = (exact, oracle_value) {
        if !approx_eq(exact, oracle) {
            return Err(HarnessError::ReferenceMismatch { spec, exact, oracle });
        }
    }
    let reference = exact.or(oracle_value);

    let trials = results
        .into_iter()
        .map(|result| {
            let ratio = reference.map(|opt| approximation_ratio(result.exact_value, opt));
            let suboptimal = ratio.is_some_and(|r| r > 1.0 + REL_TOL);
            Trial { result, ratio, suboptimal }
        })
        .collect();

    Ok(ExperimentRecord { cell, replicate, spec, oracle_value, reference, trials })
}
