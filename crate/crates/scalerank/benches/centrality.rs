//! Centrality benchmarks. Every group is labeled with the execution mode so
//! reports from `cargo bench` (rayon) and
//! `cargo bench --no-default-features` (sequential) land side by side in the
//! same Criterion baseline and can be compared directly.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use scalerank::centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, eigenvector_centrality,
};
use scalerank::exec;
use scalerank::graph::{extract_giant, Graph};
use scalerank::synth::{synthesize, SyntheticSpec};
use std::hint::black_box;

fn mode() -> &'static str {
    if exec::is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

/// A planted-partition graph big enough that per-source BFS dominates, small
/// enough for quick iterations: three blocks, ~1.3k nodes, ~9k edges.
fn bench_graph() -> Graph {
    let spec = SyntheticSpec::uniform(vec![600, 450, 250], 0.02, 0.002, 20240);
    let g = synthesize(&spec).expect("valid spec");
    extract_giant(&g).expect("non-empty graph").graph
}

fn centrality_benches(c: &mut Criterion) {
    let g = bench_graph();
    let mut group = c.benchmark_group("centrality");
    group.sample_size(10);

    group.bench_function(BenchmarkId::new("degree", mode()), |b| {
        b.iter(|| degree_centrality(black_box(&g)).unwrap())
    });
    group.bench_function(BenchmarkId::new("closeness", mode()), |b| {
        b.iter(|| closeness_centrality(black_box(&g)).unwrap())
    });
    group.bench_function(BenchmarkId::new("betweenness-exact", mode()), |b| {
        b.iter(|| betweenness_centrality(black_box(&g), None, 7).unwrap())
    });
    group.bench_function(BenchmarkId::new("betweenness-128-pivots", mode()), |b| {
        b.iter(|| betweenness_centrality(black_box(&g), Some(128), 7).unwrap())
    });
    group.bench_function(BenchmarkId::new("eigenvector", mode()), |b| {
        b.iter(|| eigenvector_centrality(black_box(&g), 1e-10, 1000).unwrap())
    });

    group.finish();
}

criterion_group!(benches, centrality_benches);
criterion_main!(benches);
