use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lefschetz_bench::{algebras, fixed_point_cases, polynomials, verify_cases};
use lefschetz_core::algebraic::classify_unit_circle;
use lefschetz_core::dynamics::fixed_points;
use lefschetz_core::lefschetz::{default_precision, verify, FoliationChoice};
use lefschetz_core::lie::{betti_numbers, ce_complex_of};

fn bench_fixed_points(c: &mut Criterion) {
    let mut group = c.benchmark_group("fixed_points");
    for case in fixed_point_cases() {
        group.bench_with_input(BenchmarkId::from_parameter(case.name), &case, |b, case| {
            b.iter(|| fixed_points(black_box(&case.group), black_box(&case.map)).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_unstable");
    group.sample_size(20);
    let precision = default_precision();
    for case in verify_cases() {
        group.bench_with_input(BenchmarkId::from_parameter(case.name), &case, |b, case| {
            b.iter(|| verify(&case.group, &case.map, &FoliationChoice::Unstable, &precision).unwrap())
        });
    }
    group.finish();
}

fn bench_ce_complex(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_numbers");
    for (name, l) in algebras() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &l, |b, l| {
            b.iter(|| betti_numbers(&ce_complex_of(black_box(l))))
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_unit_circle");
    for (name, p) in polynomials() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &p, |b, p| {
            b.iter(|| classify_unit_circle(black_box(p)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_fixed_points, bench_verify, bench_ce_complex, bench_classify);
criterion_main!(benches);
