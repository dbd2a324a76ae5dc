use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use jacobi_orbits::audit::{run_audit_with, Execution, SamplerConfig};

fn audit(c: &mut Criterion) {
    let cfg = SamplerConfig::new(42, 100, 10).unwrap();
    let mut g = c.benchmark_group("audit-100-trials");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| run_audit_with(black_box(&cfg), Execution::Sequential)));
    g.bench_function("parallel", |b| b.iter(|| run_audit_with(black_box(&cfg), Execution::Parallel)));
    g.finish();
}

criterion_group!(benches, audit);
criterion_main!(benches);
