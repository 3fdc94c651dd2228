use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fractunnel::kernels::KernelEvalPolicy;
use fractunnel::scattering::{delta_rt, double_delta_rt_with, zero_energy_double, PhysicalParams};

fn bench_single(c: &mut Criterion) {
    let params = PhysicalParams::natural(1.5, 10.0);
    c.bench_function("delta_rt", |b| b.iter(|| delta_rt(&params, black_box(2.0))));
}

fn bench_double(c: &mut Criterion) {
    let policy = KernelEvalPolicy::default();
    let params = PhysicalParams::natural(1.8, 20.0).with_mu(0.5).with_r_sep(1.0);
    c.bench_function("double_delta_rt", |b| b.iter(|| double_delta_rt_with(&params, black_box(2.0), &policy)));
    c.bench_function("zero_energy_double", |b| b.iter(|| zero_energy_double(black_box(&params), &policy)));
}

criterion_group!(benches, bench_single, bench_double);
criterion_main!(benches);
