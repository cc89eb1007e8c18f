use std::hint::black_box;

use bubble_bench::composable_pairs;
use bubble_core::cell::gram_direct;
use bubble_core::linalg::specialize;
use bubble_core::multicolour::{count_bubble_basis, enumerate_bubble_basis, multiply};
use bubble_core::{rank, ParameterSpec, WeightLambda};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for n in [4, 6, 8] {
        let pairs = composable_pairs(n, 2, 64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &pairs, |b, pairs| {
            b.iter(|| {
                for (x, y) in pairs {
                    black_box(multiply(x, y).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (n, m) in [(4, 3), (5, 2), (6, 2)] {
        group.bench_function(format!("list n={n} m={m}"), |b| b.iter(|| enumerate_bubble_basis(n, m).len()));
        group.bench_function(format!("count n={n} m={m}"), |b| b.iter(|| count_bubble_basis(n, m)));
    }
    group.finish();
}

fn bench_gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_direct");
    group.sample_size(10);
    for (n, l) in [(4, [0, 0]), (6, [0, 2]), (6, [0, 0])] {
        let w = WeightLambda::new(n, l.to_vec()).unwrap();
        group.bench_function(format!("n={n} lambda={w}"), |b| b.iter(|| gram_direct(&w).unwrap()));
    }
    group.finish();
}

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    let point = ParameterSpec::parse_list(&["root:2", "root:4"]).unwrap();
    for (n, l) in [(5, [1, 0]), (6, [0, 2]), (6, [0, 0])] {
        let w = WeightLambda::new(n, l.to_vec()).unwrap();
        let g = specialize(&gram_direct(&w).unwrap(), &point).unwrap();
        group.bench_function(format!("n={n} lambda={w} dim={}", g.rows()), |b| b.iter(|| rank(&g).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_multiply, bench_enumerate, bench_gram, bench_rank);
criterion_main!(benches);
