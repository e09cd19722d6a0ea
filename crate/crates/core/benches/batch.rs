use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use twistlab_core::batch::{jobs, par_map, seq_map, verify_jobs};
use twistlab_core::homology::word_to_matrix;
use twistlab_core::library::family;

const FAMILIES: &[&str] = &["A", "B", "C", "D", "GSR_capped"];

fn verify_families(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_families");
    group.sample_size(10);
    for max_genus in [4, 8] {
        let js = jobs(FAMILIES, max_genus, 1);
        group.bench_with_input(BenchmarkId::new("sequential", max_genus), &js, |b, js| {
            b.iter(|| verify_jobs(black_box(js), false).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", max_genus), &js, |b, js| {
            b.iter(|| verify_jobs(black_box(js), true).unwrap())
        });
    }
    group.finish();
}

fn word_matrices(c: &mut Criterion) {
    let words: Vec<_> = (1..=6)
        .flat_map(|g| (1..=4).map(move |n| family("D", g, n).unwrap().word))
        .collect();
    let mut group = c.benchmark_group("word_matrices");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| seq_map(black_box(&words), |w| word_to_matrix(w).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| par_map(black_box(&words), |w| word_to_matrix(w).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, verify_families, word_matrices);
criterion_main!(benches);
