use std::collections::BTreeSet;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eicf_bench::{fibonacci_ratio, sqrt};
use eicf_cli::render::{render, Layer, RenderSpec};
use eicf_core::{expand_approx, expand_rational, expand_via_intervals, is_strong_approximant, ExtRational};
use num_rational::BigRational;

fn expansions(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_rational");
    for n in [30, 300] {
        let x = fibonacci_ratio(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| b.iter(|| expand_rational(x)));
    }
    group.finish();

    let x = sqrt(7, 200);
    let mut group = c.benchmark_group("sqrt7_200_digits_100_terms");
    group.bench_function("nearest_even", |b| b.iter(|| expand_approx(&x, 100).unwrap()));
    group.bench_function("nested_intervals", |b| b.iter(|| expand_via_intervals(&x, 100).unwrap()));
    group.finish();
}

fn approximants(c: &mut Criterion) {
    let x = sqrt(2, 60);
    let u = ExtRational::new(19601, 13860).unwrap();
    c.bench_function("strong_approximant_den_13860", |b| b.iter(|| is_strong_approximant(&u, &x).unwrap()));
}

fn rendering(c: &mut Criterion) {
    let spec = RenderSpec {
        x_min: BigRational::from_integer((-2).into()),
        x_max: BigRational::from_integer(4.into()),
        max_denominator: 40,
        height_scale: BigRational::from_integer(1.into()),
        show: BTreeSet::from([Layer::TreeEdges, Layer::GraphEdges, Layer::FordCircles]),
        path: None,
    };
    c.bench_function("render_den_40", |b| b.iter(|| render(&spec).unwrap()));
}

criterion_group!(benches, expansions, approximants, rendering);
criterion_main!(benches);
