use std::fs;
use std::path::PathBuf;

use onemedian::generators::Family;
use onemedian::harness::{run_suite, summarize, summary_to_csv, summary_to_json, CellGrid, SuiteConfig};
use onemedian::solvers::Algorithm;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against the stored file; `UPDATE_GOLDEN=1` rewrites it.
fn check(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "{name} changed; rerun with UPDATE_GOLDEN=1 after reviewing");
}

#[test]
fn ten_record_summary() {
    let mut config = SuiteConfig::new(
        vec![CellGrid { families: vec![Family::Rru, Family::Rdu], n: vec![40], m: vec![5] }],
        5,
        Algorithm::ALL.to_vec(),
    );
    config.base_seed = 2024;
    config.oracle = true;
    let records = run_suite(&config).unwrap();
    assert_eq!(records.len(), 10);
    let summary = summarize(&records).unwrap().without_timing();
    check("summary_10.csv", &summary_to_csv(&summary).unwrap());
    check("summary_10.json", &summary_to_json(&summary).unwrap());
}
