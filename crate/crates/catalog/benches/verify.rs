use criterion::{criterion_group, criterion_main, Criterion};
use k3fib_catalog::{load_catalog, verify_entries};
use k3fib_nishiyama::enumerate_all_with;

fn bench(c: &mut Criterion) {
    let entries = load_catalog(None).unwrap();
    let records = enumerate_all_with(0).unwrap();
    let mut g = c.benchmark_group("verify_all");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| verify_entries(&entries, &records, 1, true)));
    g.bench_function("parallel", |b| b.iter(|| verify_entries(&entries, &records, 0, true)));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
