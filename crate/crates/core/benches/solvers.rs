use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use onemedian::generators::{Family, GenSpec};
use onemedian::harness::{run_suite_with, CellGrid, SuiteConfig};
use onemedian::solvers::{solve_with, Algorithm};
use onemedian::Execution;

fn modes() -> Vec<Execution> {
    let mut modes = vec![Execution::Sequential];
    if cfg!(feature = "parallel") {
        modes.push(Execution::Parallel);
    }
    modes
}

fn solvers(c: &mut Criterion) {
    let inst = GenSpec::new(Family::Gdu, 40_000, 16, 1).generate().unwrap();
    for algo in [Algorithm::Exact, Algorithm::ExactTruncated, Algorithm::Spa] {
        let mut group = c.benchmark_group(format!("gdu_40k_m16/{algo}"));
        group.sample_size(10).measurement_time(Duration::from_secs(5));
        for exec in modes() {
            group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| black_box(solve_with(&inst, algo, exec)))
            });
        }
        group.finish();
    }
}

fn suite(c: &mut Criterion) {
    let config = SuiteConfig::new(
        vec![CellGrid { families: vec![Family::Rru], n: vec![50], m: vec![8] }],
        32,
        vec![Algorithm::Exact, Algorithm::Sa, Algorithm::Nna, Algorithm::Spa],
    );
    let mut group = c.benchmark_group("suite_rru_50_m8_x32");
    group.sample_size(10);
    for exec in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| black_box(run_suite_with(&config, exec, |_, _, _| {}).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, solvers, suite);
criterion_main!(benches);
