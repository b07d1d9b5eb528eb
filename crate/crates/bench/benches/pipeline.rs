//! Benchmarks of the pipeline stages behind the worked examples: q-series arithmetic,
//! Zagier lifts, theta blocks, the exact functional, table evaluation and the direct
//! Green-function sums.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use greencm::arith::{rat, BigReal};
use greencm::cmformula::{build_cm_setup, bundled_table, evaluate_cm_value, formula_functional, theta_block};
use greencm::greeneval::{green_hecke, legendre_q, UHPoint};
use greencm::qforms::exponent2_survey;
use greencm::whbasis::{delta_inverse, eisenstein_series, standard_input, zagier_lift};

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [20, 80] {
        g.bench_with_input(BenchmarkId::new("e4_squared_over_delta", order), &order, |b, &o| {
            b.iter(|| {
                let e4 = eisenstein_series(4, o).unwrap();
                black_box(e4.mul(&e4).mul(&delta_inverse(o)))
            })
        });
    }
    g.finish();
}

fn lifts(c: &mut Criterion) {
    let mut g = c.benchmark_group("zagier_lift");
    for (j, d) in [(2u32, -4i64), (1, 1)] {
        let f = standard_input(j, 8).unwrap();
        g.bench_with_input(BenchmarkId::new(format!("j{j}"), d), &d, |b, &d| b.iter(|| black_box(zagier_lift(&f, d, j, 8).unwrap())));
    }
    g.finish();
}

fn formula(c: &mut Criterion) {
    let mut g = c.benchmark_group("formula");
    g.sample_size(20);
    for (d2, delta, d1, j) in [(-23i64, 1i64, -4i64, 2u32), (-23, 1, -4, 6), (-7, -3, 1, 1)] {
        let s = build_cm_setup(d2, delta, d1, j).unwrap();
        let f = standard_input(j, 4).unwrap();
        let id = format!("d2={d2},delta={delta},j={j}");
        g.bench_function(BenchmarkId::new("theta_block", &id), |b| b.iter(|| black_box(theta_block(&s, &rat(4, 1)).unwrap())));
        g.bench_function(BenchmarkId::new("functional", &id), |b| b.iter(|| black_box(formula_functional(&s, &f, 4).unwrap())));
        let table = bundled_table(if d2 == -23 { "table-23" } else { "table-63" }).unwrap();
        let fun = formula_functional(&s, &f, 4).unwrap();
        g.bench_function(BenchmarkId::new("evaluate_128_bits", &id), |b| {
            b.iter(|| black_box(evaluate_cm_value(&s, &fun, &table, 128).unwrap()))
        });
    }
    g.finish();
}

fn green(c: &mut Criterion) {
    let mut g = c.benchmark_group("green");
    g.sample_size(10);
    let z1 = UHPoint::new(0.0, 1.0).unwrap();
    let z2 = UHPoint::new(-0.25, 23f64.sqrt() / 4.0).unwrap();
    for tol in [1e-6, 1e-8] {
        g.bench_with_input(BenchmarkId::new("green_hecke_s3", tol), &tol, |b, &t| {
            b.iter(|| black_box(green_hecke(3.0, 1, &z1, &z2, t).unwrap()))
        });
    }
    let (s, t) = (BigReal::from_i64(3, 256), BigReal::from_rational(&rat(3, 2), 256));
    g.bench_function("legendre_q_256_bits", |b| b.iter(|| black_box(legendre_q(&s, &t, 256).unwrap())));
    g.finish();
}

fn survey(c: &mut Criterion) {
    c.bench_function("exponent2_survey_1000", |b| b.iter(|| black_box(exponent2_survey(1000))));
}

criterion_group!(benches, series, lifts, formula, green, survey);
criterion_main!(benches);
