use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use neighborly::harness::Catalog;
use neighborly::identities::{functional_equation_residual, rr1_product};
use neighborly::partitions::neighborly_of_weight;
use neighborly::signatures::{build_graph, prune, signature_bruteforce, signature_closed};
use neighborly::DeletionRule;
use neighborly_bench::fixture_partitions;

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for w in [16u32, 24, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(w), &w, |b, &w| {
            b.iter(|| neighborly_of_weight(black_box(w)))
        });
    }
    g.finish();
    c.bench_function("catalog/30", |b| {
        b.iter(|| Catalog::build(black_box(30), DeletionRule::Literal, usize::MAX).unwrap())
    });
}

fn signatures(c: &mut Criterion) {
    let graphs: Vec<_> = fixture_partitions(20).iter().map(build_graph).collect();
    c.bench_function("signature/bruteforce/20", |b| {
        b.iter(|| graphs.iter().map(|g| signature_bruteforce(g).unwrap()).sum::<i64>())
    });
    c.bench_function("signature/closed/20", |b| {
        b.iter(|| graphs.iter().map(|g| signature_closed(g).0).sum::<i64>())
    });
    c.bench_function("prune/20", |b| {
        b.iter(|| {
            graphs
                .iter()
                .filter(|g| signature_closed(g).0 != 0)
                .map(|g| prune(g, DeletionRule::Literal).unwrap().edge_count)
                .sum::<usize>()
        })
    });
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [100usize, 400] {
        let a = rr1_product(order);
        g.bench_with_input(BenchmarkId::new("mul", order), &a, |b, a| b.iter(|| black_box(a) * black_box(a)));
        g.bench_with_input(BenchmarkId::new("rr1_product", order), &order, |b, &o| b.iter(|| rr1_product(o)));
    }
    g.finish();
    c.bench_function("functional/8x25", |b| b.iter(|| functional_equation_residual(8, 25)));
}

criterion_group!(benches, enumeration, signatures, series);
criterion_main!(benches);
