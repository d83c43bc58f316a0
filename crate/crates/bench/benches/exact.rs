use std::hint::black_box;

use artin_hasse::determinant::{matrix_binom, verify_main};
use artin_hasse::perm::{h_n_bruteforce, h_n_expansion};
use artin_hasse::series::{u_coeffs, u_via_exp};
use artin_hasse::tableaux::{bijection_report, enumerate_tn};
use artin_hasse_bench::{prime, DETERMINANT_GRID};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients");
    for p in [2u64, 3, 7] {
        group.bench_with_input(BenchmarkId::new("recursion", p), &p, |b, &p| {
            b.iter(|| u_coeffs(prime(p), black_box(200)))
        });
        group.bench_with_input(BenchmarkId::new("series_exp", p), &p, |b, &p| {
            b.iter(|| u_via_exp(prime(p), black_box(60)))
        });
    }
    group.finish();
}

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinants");
    for &(p, ell) in DETERMINANT_GRID {
        group.bench_with_input(
            BenchmarkId::new("main", format!("p{p}_l{ell}")),
            &(p, ell),
            |b, &(p, ell)| b.iter(|| verify_main(prime(p), black_box(ell)).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("binomial", format!("p{p}_l{ell}")),
            &(p, ell),
            |b, &(p, ell)| b.iter(|| matrix_binom(prime(p), ell).unwrap().determinant().unwrap()),
        );
    }
    group.bench_function("main_p2_l16", |b| {
        b.iter(|| verify_main(prime(2), black_box(16)).unwrap())
    });
    group.finish();
}

fn p_elements(c: &mut Criterion) {
    let mut group = c.benchmark_group("p_elements");
    group.sample_size(10);
    group.bench_function("bruteforce_s8", |b| {
        b.iter(|| h_n_bruteforce(prime(2), black_box(8)).unwrap())
    });
    group.bench_function("expansion_n40", |b| {
        b.iter(|| h_n_expansion(prime(2), black_box(40)))
    });
    group.finish();
}

fn tableaux(c: &mut Criterion) {
    let mut group = c.benchmark_group("tableaux");
    group.bench_function("enumerate_p2_n4", |b| {
        b.iter(|| enumerate_tn(prime(2), black_box(4)).unwrap())
    });
    group.bench_function("bijection_p3_n3", |b| {
        b.iter(|| bijection_report(prime(3), black_box(3)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, coefficients, determinants, p_elements, tableaux);
criterion_main!(benches);
