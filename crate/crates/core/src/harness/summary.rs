use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ExperimentRecord, HarnessError};
use crate::generators::Family;
use crate::solvers::Algorithm;

/// Width of the ratio histogram bins, starting at 1.
pub const HISTOGRAM_BIN_WIDTH: f64 = 0.01;

/// Aggregate over one `(family, n, m, algorithm)` combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub algorithm: Algorithm,
    pub trials: usize,
    pub suboptimal: usize,
    /// `None` when no trial had a reference optimum.
    pub max_ratio: Option<f64>,
    pub mean_ms: Option<f64>,
    pub median_ms: Option<f64>,
    /// Largest `settled_total / (m * n)` over the trials.
    pub max_settled_fraction: f64,
}

/// Maximum ratio as a function of `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSeries {
    pub family: Family,
    pub n: usize,
    pub algorithm: Algorithm,
    pub points: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

/// Frequencies of the ratios of suboptimal trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioHistogram {
    pub family: Family,
    pub n: usize,
    pub algorithm: Algorithm,
    pub bins: Vec<HistogramBin>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    pub series: Vec<RatioSeries>,
    pub histograms: Vec<RatioHistogram>,
}

impl Summary {
    /// Drops wall-clock columns, leaving only seed-determined data.
    pub fn without_timing(mut self) -> Self {
        for row in &mut self.rows {
            row.mean_ms = None;
            row.median_ms = None;
        }
        self
    }

    pub fn row(&self, family: Family, n: usize, m: usize, algorithm: Algorithm) -> Option<&SummaryRow> {
        self.rows
            .iter()
            .find(|r| r.family == family && r.n == n && r.m == m && r.algorithm == algorithm)
    }
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    }
}

pub fn summarize(records: &[ExperimentRecord]) -> Result<Summary, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyInput);
    }

    #[derive(Default)]
    struct Acc {
        trials: usize,
        suboptimal: usize,
        max_ratio: Option<f64>,
        times_ms: Vec<f64>,
        max_settled_fraction: f64,
    }

    let mut groups: BTreeMap<(Family, usize, usize, Algorithm), Acc> = BTreeMap::new();
    let mut hist: BTreeMap<(Family, usize, Algorithm), BTreeMap<usize, usize>> = BTreeMap::new();
    for record in records {
        let spec = record.spec;
        for trial in &record.trials {
            let algorithm = trial.result.algorithm;
            let acc = groups.entry((spec.family, spec.n, spec.m, algorithm)).or_default();
            acc.trials += 1;
            acc.suboptimal += trial.suboptimal as usize;
            if let Some(r) = trial.ratio {
                acc.max_ratio = Some(acc.max_ratio.map_or(r, |m: f64| m.max(r)));
            }
            acc.times_ms.push(trial.result.wall_time.as_secs_f64() * 1e3);
            let fraction = trial.result.settled_total as f64 / (spec.m * spec.n) as f64;
            acc.max_settled_fraction = acc.max_settled_fraction.max(fraction);
            let bins = hist.entry((spec.family, spec.n, algorithm)).or_default();
            if let (true, Some(r)) = (trial.suboptimal, trial.ratio) {
                let bin = ((r - 1.0) / HISTOGRAM_BIN_WIDTH).floor().max(0.0) as usize;
                *bins.entry(bin).or_default() += 1;
            }
        }
    }

    let mut rows = Vec::with_capacity(groups.len());
    let mut series: BTreeMap<(Family, usize, Algorithm), Vec<(usize, f64)>> = BTreeMap::new();
    for ((family, n, m, algorithm), mut acc) in groups {
        acc.times_ms.sort_unstable_by(f64::total_cmp);
        let mean = acc.times_ms.iter().sum::<f64>() / acc.times_ms.len() as f64;
        if let Some(r) = acc.max_ratio {
            series.entry((family, n, algorithm)).or_default().push((m, r));
        }
        rows.push(SummaryRow {
            family,
            n,
            m,
            algorithm,
            trials: acc.trials,
            suboptimal: acc.suboptimal,
            max_ratio: acc.max_ratio,
            mean_ms: Some(mean),
            median_ms: Some(median(&acc.times_ms)),
            max_settled_fraction: acc.max_settled_fraction,
        });
    }

    let series = series
        .into_iter()
        .map(|((family, n, algorithm), points)| RatioSeries { family, n, algorithm, points })
        .collect();
    let histograms = hist
        .into_iter()
        .map(|((family, n, algorithm), bins)| RatioHistogram {
            family,
            n,
            algorithm,
            bins: bins
                .into_iter()
                .map(|(b, count)| HistogramBin {
                    lower: 1.0 + b as f64 * HISTOGRAM_BIN_WIDTH,
                    upper: 1.0 + (b + 1) as f64 * HISTOGRAM_BIN_WIDTH,
                    count,
                })
                .collect(),
        })
        .collect();

    Ok(Summary { rows, series, histograms })
}
