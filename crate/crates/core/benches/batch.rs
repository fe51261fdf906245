use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dynmaint::batch::{
    churn_job, grid, grid_case, map_batch, map_batch_sequential, ChurnJob,
};

fn churn_jobs() -> Vec<ChurnJob> {
    (0..16)
        .map(|seed| ChurnJob {
            n: 200,
            steps: 5_000,
            p_add: 0.6,
            seed,
            with_oracle: false,
        })
        .collect()
}

fn bench_churn(c: &mut Criterion) {
    let jobs = churn_jobs();
    let mut group = c.benchmark_group("churn_runs");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| map_batch_sequential(black_box(&jobs), churn_job))
    });
    group.bench_function("parallel", |b| b.iter(|| map_batch(black_box(&jobs), churn_job)));
    group.finish();
}

fn bench_grid(c: &mut Criterion) {
    let cases = grid(&[2], &[2, 4], &[1, 2], 0..3);
    let mut group = c.benchmark_group("reduction_grid");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| map_batch_sequential(black_box(&cases), grid_case))
    });
    group.bench_function("parallel", |b| b.iter(|| map_batch(black_box(&cases), grid_case)));
    group.finish();
}

criterion_group!(benches, bench_churn, bench_grid);
criterion_main!(benches);
