use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use semifactor::classifier::{classify, exhaustive_scan, ClassifierConfig};
use semifactor::factorizer::{oracle_factorizations, Factorizer, OracleLimits};
use semifactor::graph::{canonical_form, graph_factorizations, FactorLimits, Product};
use semifactor::gridorder::{enumerate_bijections, GridShape};
use semifactor_bench::{polynomials, six_term_graph};

fn bijections(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_bijections");
    for (r, s, symmetric) in [(3, 2, false), (2, 4, false), (3, 3, true), (2, 5, false), (4, 4, true)] {
        group.bench_function(BenchmarkId::from_parameter(format!("{r}x{s}")), |b| {
            b.iter(|| enumerate_bijections(GridShape::new(r, s), symmetric).len())
        });
    }
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_factorizations");
    for (name, p) in polynomials() {
        // A fresh engine per iteration so the memo does not hide the work.
        group.bench_function(name, |b| b.iter(|| Factorizer::default().all_factorizations(black_box(&p))));
    }
    group.finish();

    let mut group = c.benchmark_group("oracle_factorizations");
    for (name, p) in polynomials().into_iter().filter(|(_, p)| p.vars() == 1) {
        group.bench_function(name, |b| b.iter(|| oracle_factorizations(black_box(&p), &OracleLimits::default())));
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let config = ClassifierConfig::default();
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for t in [6, 8, 9, 10] {
        group.bench_function(BenchmarkId::from_parameter(t), |b| b.iter(|| classify(t, &config)));
    }
    group.finish();

    let mut group = c.benchmark_group("exhaustive_scan");
    group.sample_size(10);
    group.bench_function("t=6,e=15", |b| b.iter(|| exhaustive_scan(6, 15, &config)));
    group.bench_function("t=10,e=9", |b| b.iter(|| exhaustive_scan(10, 9, &config)));
    group.finish();
}

fn graphs(c: &mut Criterion) {
    let limits = FactorLimits::default();
    let mut group = c.benchmark_group("graph_factorizations");
    group.sample_size(10);
    for product in Product::ALL {
        let gs = six_term_graph(product);
        group.bench_function(product.to_string(), |b| b.iter(|| graph_factorizations(black_box(&gs), product, &limits)));
    }
    group.finish();

    let cube = six_term_graph(Product::Cartesian).to_graph();
    c.bench_function("canonical_form/six-term cartesian sum", |b| {
        b.iter(|| {
            cube.components()
                .iter()
                .map(|g| canonical_form(g).map(|h| h.vertex_count()))
                .collect::<Vec<_>>()
        })
    });
}

criterion_group!(benches, bijections, factorization, classification, graphs);
criterion_main!(benches);
