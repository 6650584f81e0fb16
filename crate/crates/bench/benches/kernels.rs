use std::hint::black_box;

use beatty_core::{
    beatty_enumerate, beatty_member, lower_bound_witness, q_coefficients, sieve_tau_k, sigma_ell_prefix, AlphaValue,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn sqrt2() -> AlphaValue {
    "quad:0,1,2,1".parse().unwrap()
}

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve_tau");
    for k in [2u32, 3] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| b.iter(|| sieve_tau_k(black_box(1 << 20), k)));
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let alpha = sqrt2();
    let pi: AlphaValue = "dec:3.14159265358979323846264338327950288419716939937510".parse().unwrap();
    let zero = AlphaValue::integer(0);
    c.bench_function("member_quadratic", |b| b.iter(|| beatty_member(black_box(987_654_321), &alpha, &zero)));
    c.bench_function("member_decimal", |b| b.iter(|| beatty_member(black_box(987_654_321), &pi, &zero)));
    c.bench_function("enumerate_1e6", |b| b.iter(|| beatty_enumerate(&alpha, &zero, black_box(1_000_000))));
}

fn sawtooth(c: &mut Criterion) {
    let f = sieve_tau_k(1 << 20, 2).unwrap();
    let alpha = sqrt2();
    c.bench_function("sigma_prefix_2^20", |b| b.iter(|| sigma_ell_prefix(&f, &alpha, 0, black_box(1 << 20))));
}

fn spectral(c: &mut Criterion) {
    let f = sieve_tau_k(1 << 12, 2).unwrap();
    c.bench_function("q_coefficients_2^12", |b| b.iter(|| q_coefficients(&f, black_box(1 << 12))));
}

fn lil(c: &mut Criterion) {
    let lambda: AlphaValue = "dec:0.70710678118654752440".parse().unwrap();
    c.bench_function("witness_1e6", |b| b.iter(|| lower_bound_witness(&lambda, black_box(1_000_000), 7)));
}

criterion_group!(benches, sieve, membership, sawtooth, spectral, lil);
criterion_main!(benches);
