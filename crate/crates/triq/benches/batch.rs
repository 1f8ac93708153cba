//! Batch-throughput benchmarks: the feature-selected map (rayon under
//! the default `parallel` feature) against the always-sequential path.
//!
//! Run with `cargo bench -p triq` and compare against
//! `cargo bench -p triq --no-default-features` to see the sequential
//! core without rayon in the build at all.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use triq::batch::{analyze_many, analyze_many_seq, run_fuzz};
use triq::random::{random_pure_state, seeded_rng};
use triq::states::PureState3;

fn sample_states(count: usize, seed: u64) -> Vec<PureState3> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| random_pure_state(&mut rng)).collect()
}

fn bench_batch_analyze(c: &mut Criterion) {
    let states = sample_states(128, 7);
    let q_grid = [2.0];
    let mut group = c.benchmark_group("analyze_128_states");
    group.sample_size(20);
    group.bench_function("feature_map", |b| {
        b.iter(|| analyze_many(black_box(&states), &q_grid).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| analyze_many_seq(black_box(&states), &q_grid).unwrap())
    });
    group.finish();
}

fn bench_fuzz(c: &mut Criterion) {
    let mut group = c.benchmark_group("fuzz");
    group.sample_size(20);
    group.bench_function("512_states", |b| {
        b.iter(|| run_fuzz(512, black_box(42)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_batch_analyze, bench_fuzz);
criterion_main!(benches);
