use criterion::{criterion_group, criterion_main, Criterion};
use metacyclic::sweep::{evaluate, map_jobs, map_jobs_sequential, sweep_jobs};

// Types up to m = 6 at p <= 13: large enough that the pool has work to share,
// small enough for criterion's repeated sampling.
fn sweep(c: &mut Criterion) {
    let jobs = sweep_jobs(6, 13);
    let mut g = c.benchmark_group("sweep_m6_p13");
    g.sample_size(10);
    g.bench_function("pool", |b| b.iter(|| map_jobs(&jobs, evaluate)));
    g.bench_function("sequential", |b| b.iter(|| map_jobs_sequential(&jobs, evaluate)));
    g.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
