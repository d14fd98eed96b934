use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use nil53_bench::{sample_elements, sample_params};
use nil53_core::{canonicalize, embed};

fn group_law(c: &mut Criterion) {
    let elems = sample_elements(64);
    let mut g = c.benchmark_group("group_law");
    for p in sample_params() {
        g.bench_with_input(BenchmarkId::new("multiply", p), &p, |b, p| {
            b.iter(|| {
                elems
                    .windows(2)
                    .map(|w| p.multiply(black_box(&w[0]), black_box(&w[1])))
                    .collect::<Vec<_>>()
            })
        });
        g.bench_with_input(BenchmarkId::new("inverse", p), &p, |b, p| {
            b.iter(|| elems.iter().map(|x| p.inverse(black_box(x))).collect::<Vec<_>>())
        });
        g.bench_with_input(BenchmarkId::new("power_1000", p), &p, |b, p| {
            b.iter(|| p.power(black_box(&elems[5]), 1000))
        });
    }
    g.finish();
}

fn canon_and_embed(c: &mut Criterion) {
    let elems = sample_elements(16);
    let mut g = c.benchmark_group("canon_embed");
    for p in sample_params() {
        g.bench_with_input(BenchmarkId::new("canonicalize", p), &p, |b, p| {
            b.iter(|| canonicalize(black_box(p)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("phi", p), &p, |b, p| {
            b.iter(|| elems.iter().map(|x| embed::phi(p, black_box(x)).unwrap()).collect::<Vec<_>>())
        });
        g.bench_with_input(BenchmarkId::new("coset_reduce", p), &p, |b, p| {
            b.iter(|| elems.iter().map(|x| embed::coset_reduce(p, black_box(x)).unwrap()).collect::<Vec<_>>())
        });
    }
    g.finish();
}

criterion_group!(benches, group_law, canon_and_embed);
criterion_main!(benches);
