use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rpkit::{is_strongly_acyclic, synthesize, utility_from_stratification, Stratification};
use rpkit_bench::{preorder, sparse, strongly_acyclic};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("transitive_closure");
    group.sample_size(10);
    for n in [256, 1024, 2048] {
        let r = sparse(n, 2.0, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| b.iter(|| r.transitive_closure()));
    }
    group.finish();
}

fn acyclicity(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_strongly_acyclic");
    for n in [64, 256, 1024] {
        let yes = strongly_acyclic(n, 2);
        let no = sparse(n, 3.0, 2);
        group.bench_with_input(BenchmarkId::new("strongly_acyclic", n), &yes, |b, r| {
            b.iter(|| is_strongly_acyclic(black_box(r)))
        });
        group.bench_with_input(BenchmarkId::new("sparse_random", n), &no, |b, r| {
            b.iter(|| is_strongly_acyclic(black_box(r)))
        });
    }
    group.finish();
}

fn representation(c: &mut Criterion) {
    let mut group = c.benchmark_group("representation");
    for n in [16, 64, 256] {
        let r = strongly_acyclic(n, 3);
        group.bench_with_input(BenchmarkId::new("synthesize", n), &r, |b, r| b.iter(|| synthesize(r).unwrap()));
        let p = preorder(n, 3);
        let s = Stratification::singletons(&p);
        group.bench_with_input(BenchmarkId::new("series_singletons", n), &(p, s), |b, (p, s)| {
            b.iter(|| utility_from_stratification(p, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closure, acyclicity, representation);
criterion_main!(benches);
