use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gswf_bench::condorcet;
use gswf_core::rationality::{w_formula, w_monte_carlo, w_oracle};
use gswf_core::search::{extremal_w, ClassFilter, Objective};
use gswf_core::{EvenProductDistribution, TripleDistribution};
use std::hint::black_box;

fn rationality(c: &mut Criterion) {
    let u = EvenProductDistribution::uniform();
    let mut group = c.benchmark_group("w_formula");
    for n in [5usize, 11, 17] {
        let g = condorcet(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| w_formula(black_box(g), &u).unwrap())
        });
    }
    group.finish();

    let t = TripleDistribution::uniform();
    let mut group = c.benchmark_group("w_oracle");
    group.sample_size(10);
    for n in [3usize, 5, 7] {
        let g = condorcet(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| w_oracle(black_box(g), &t).unwrap())
        });
    }
    group.finish();

    let g = condorcet(9);
    c.bench_function("w_monte_carlo_n9_1e5", |b| {
        b.iter(|| w_monte_carlo(black_box(&g), &t, 100_000, 7).unwrap())
    });

    let filter: ClassFilter = "monotone".parse().unwrap();
    let mut group = c.benchmark_group("extremal_w");
    group.sample_size(10);
    group.bench_function("monotone_n4", |b| {
        b.iter(|| extremal_w(4, [&filter, &filter, &filter], &u, Objective::MaxW, false).unwrap())
    });
    group.finish();
}

criterion_group!(benches, rationality);
criterion_main!(benches);
