use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use supermat::exec::Exec;
use supermat::verify::{run_suite, SuiteOptions};

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    let cases = [
        ("iso", Some(4), 20),
        ("susy", None, 50),
        ("transpose", None, 200),
    ];
    for (suite, n, trials) in cases {
        for (label, exec) in [
            ("sequential", Exec::Sequential),
            ("parallel", Exec::Parallel),
        ] {
            let opts = SuiteOptions {
                trials: Some(trials),
                seed: 1,
                n,
                exec,
                ..SuiteOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(label, suite), &opts, |bench, opts| {
                bench.iter(|| black_box(run_suite(suite, opts).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
