use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quadri_core::bialgebra::drinfeld_double_with;
use quadri_core::bialgebra::coboundary_bialgebra;
use quadri_core::exactlin::{int, Scalar};
use quadri_core::search::{enumerate_structures_with, search_q_solutions_with, Found, QSearchSpec, SearchKind, SearchSpec};
use quadri_core::Executor;

const EXECUTORS: [(&str, Executor); 2] = [("sequential", Executor::Sequential), ("parallel", Executor::Parallel)];

fn coeffs() -> Vec<Scalar> {
    vec![int(-1), int(0), int(1)]
}

fn structures(c: &mut Criterion) {
    let mut spec = SearchSpec::new(SearchKind::Quadri, 2, coeffs());
    spec.max_nonzero = Some(2);
    let mut group = c.benchmark_group("enumerate_quadri_dim2");
    group.sample_size(10);
    for (name, exec) in EXECUTORS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| enumerate_structures_with(black_box(&spec), exec).unwrap())
        });
    }
    group.finish();
}

fn q_solutions(c: &mut Criterion) {
    let mut spec = SearchSpec::new(SearchKind::Quadri, 2, coeffs());
    spec.max_nonzero = Some(3);
    let hits = enumerate_structures_with(&spec, Executor::Parallel).unwrap().hits;
    let Some(Found::Quadri(q)) = hits.last() else { return };
    let qs = QSearchSpec {
        coefficients: coeffs(),
        mask: None,
        budget: 1 << 16,
        require_skew: false,
        require_nondegenerate: false,
        seed: 0,
    };
    let mut group = c.benchmark_group("q_solutions_dim2");
    group.sample_size(10);
    for (name, exec) in EXECUTORS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| search_q_solutions_with(black_box(q), &qs, exec).unwrap())
        });
    }
    group.finish();

    let skew = QSearchSpec {
        require_skew: true,
        require_nondegenerate: true,
        ..qs
    };
    let Some(bialgebra) = hits.iter().rev().find_map(|f| {
        let Found::Quadri(q) = f else { return None };
        let r = search_q_solutions_with(q, &skew, Executor::Parallel).unwrap().hits.pop()?;
        Some(coboundary_bialgebra(q, &r).unwrap())
    }) else {
        return;
    };
    let mut group = c.benchmark_group("drinfeld_double_dim2");
    for (name, exec) in EXECUTORS {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| drinfeld_double_with(black_box(&bialgebra), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, structures, q_solutions);
criterion_main!(benches);
