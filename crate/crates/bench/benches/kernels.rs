use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fractunnel::kernels::{j_alpha, j_alpha_series, phi_alpha_fox, xi_alpha, KernelEvalPolicy};
use fractunnel::numcore::gamma;

fn bench_gamma(c: &mut Criterion) {
    c.bench_function("gamma_7.3", |b| b.iter(|| gamma(black_box(7.3))));
}

fn bench_j(c: &mut Criterion) {
    let policy = KernelEvalPolicy::default();
    c.bench_function("j_series_w0.02", |b| b.iter(|| j_alpha_series(black_box(0.02), 1.7)));
    c.bench_function("j_quadrature_w3", |b| b.iter(|| j_alpha(black_box(3.0), 1.7, &policy)));
    c.bench_function("xi_w3", |b| b.iter(|| xi_alpha(black_box(3.0), 1.7, &policy)));
    c.bench_function("phi_fox_w0.5", |b| b.iter(|| phi_alpha_fox(black_box(0.5), 1.7, 40)));
}

criterion_group!(benches, bench_gamma, bench_j);
criterion_main!(benches);
