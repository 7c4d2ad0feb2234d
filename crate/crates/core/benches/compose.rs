use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use supermat::exec::Exec;
use supermat::grassmann::AlgebraSignature;
use supermat::random;

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    group.sample_size(10);
    for n in 8..=10usize {
        let s = AlgebraSignature::full(n).unwrap();
        let mut rng = random::rng(n as u64);
        let a = random::operator(&mut rng, s, 4 * s.dim());
        let b = random::operator(&mut rng, s, 4 * s.dim());
        for (label, exec) in [
            ("sequential", Exec::Sequential),
            ("parallel", Exec::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |bench, _| {
                bench.iter(|| black_box(a.compose_with(&b, exec).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, compose);
criterion_main!(benches);
