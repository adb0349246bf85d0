use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use refdyn_core::algebra::rational::int;
use refdyn_core::billiards::{build_configuration, third_intersection};
use refdyn_core::germs::{cross_check, valuation_chain, ValuationVector, DEFAULT_TRUNCATION};
use refdyn_core::transitions::triangle::triangle_system;
use refdyn_core::transitions::{conic_line_matrix, dominant_growth, Reflection};
use refdyn_core::StateVector;

fn char_poly(c: &mut Criterion) {
    let p = triangle_system().period_product();
    c.bench_function("char_poly_6x6", |b| b.iter(|| black_box(&p).char_poly().unwrap()));
}

fn growth(c: &mut Criterion) {
    let m = conic_line_matrix();
    let v0 = StateVector::from_ints(0, &[0, 0, 1]);
    c.bench_function("dominant_growth_conic_line", |b| b.iter(|| dominant_growth(black_box(&m), &v0).unwrap()));
    let p = triangle_system().period_product();
    let w0 = StateVector::basis(6, 0);
    c.bench_function("dominant_growth_triangle", |b| b.iter(|| dominant_growth(black_box(&p), &w0).unwrap()));
}

fn germs(c: &mut Criterion) {
    c.bench_function("valuation_chain_60", |b| b.iter(|| valuation_chain(&ValuationVector::transverse(), 60).unwrap()));
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    g.bench_function("cross_check_1x10", |b| b.iter(|| cross_check(1, 10, 0, DEFAULT_TRUNCATION).unwrap()));
    g.finish();
}

fn billiard(c: &mut Criterion) {
    let cfg = build_configuration(0).unwrap();
    let x = cfg.line_point(&[int(1), int(5)]).unwrap();
    let y = third_intersection(cfg.surface(), cfg.center(Reflection::R), &x).unwrap();
    c.bench_function("third_intersection", |b| {
        b.iter(|| third_intersection(cfg.surface(), cfg.center(Reflection::R), black_box(&y)).unwrap())
    });
}

criterion_group!(kernels, char_poly, growth, germs, billiard);
criterion_main!(kernels);
