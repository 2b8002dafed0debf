use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::{HarnessError, Summary};

pub const CSV_HEADER: [&str; 9] =
    ["family", "n", "m", "algorithm", "trials", "suboptimal", "max_ratio", "mean_ms", "median_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!("unknown report format `{s}` (expected csv or json)")),
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per `(family, n, m, algorithm)`; missing values are empty fields.
pub fn summary_to_csv(summary: &Summary) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in &summary.rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.algorithm.to_string(),
            r.trials.to_string(),
            r.suboptimal.to_string(),
            opt(r.max_ratio),
            opt(r.mean_ms),
            opt(r.median_ms),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn summary_to_json(summary: &Summary) -> Result<String, HarnessError> {
    let mut text = serde_json::to_string_pretty(summary)?;
    text.push('\n');
    Ok(text)
}

pub fn export_report(summary: &Summary, format: ReportFormat, path: impl AsRef<Path>) -> Result<(), HarnessError> {
    let text = match format {
        ReportFormat::Csv => summary_to_csv(summary)?,
        ReportFormat::Json => summary_to_json(summary)?,
    };
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Family;
    use crate::harness::{run_suite, summarize, CellGrid, SuiteConfig};
    use crate::solvers::Algorithm;

    fn small_summary() -> Summary {
        let mut c = SuiteConfig::new(
            vec![CellGrid { families: vec![Family::Rru, Family::Rrw], n: vec![20], m: vec![3, 5] }],
            3,
            vec![Algorithm::Exact, Algorithm::Sa, Algorithm::Spa],
        );
        c.oracle = true;
        summarize(&run_suite(&c).unwrap()).unwrap()
    }

    #[test]
    fn csv_schema() {
        let csv = summary_to_csv(&small_summary()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("family,n,m,algorithm,trials,suboptimal,max_ratio,mean_ms,median_ms"));
        assert_eq!(lines.count(), 2 * 2 * 3);
        assert!(csv.contains("\nRRU,20,3,exact,3,0,1,"));
    }

    #[test]
    fn json_round_trip() {
        let s = small_summary();
        let back: Summary = serde_json::from_str(&summary_to_json(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn timing_free_reports_are_reproducible() {
        let a = summary_to_csv(&small_summary().without_timing()).unwrap();
        let b = summary_to_csv(&small_summary().without_timing()).unwrap();
        assert_eq!(a, b);
        assert!(a.lines().nth(1).unwrap().ends_with(",,"));
    }

    #[test]
    fn writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let s = small_summary();
        export_report(&s, ReportFormat::Csv, dir.path().join("s.csv")).unwrap();
        export_report(&s, ReportFormat::Json, dir.path().join("s.json")).unwrap();
        assert!(std::fs::read_to_string(dir.path().join("s.csv")).unwrap().starts_with("family,"));
        let missing = export_report(&s, ReportFormat::Csv, dir.path().join("nope/s.csv"));
        assert!(matches!(missing, Err(HarnessError::Io(_))));
    }
}
