use criterion::{criterion_group, criterion_main, Criterion};
use k3fib_nishiyama::enumerate_all_with;

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_all");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| enumerate_all_with(1).unwrap()));
    g.bench_function("parallel", |b| b.iter(|| enumerate_all_with(0).unwrap()));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
