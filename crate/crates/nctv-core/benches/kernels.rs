//! Compares the parallel and sequential paths for kernel-matrix
//! construction and for a full residual computation.

use criterion::{criterion_group, criterion_main, Criterion};

use nctv_core::grp::FiniteGroup;
use nctv_core::walters::{
    build_kernel, order_residual, sample_gaussian, Grid, KernelCache,
};

fn bench_kernel_build(c: &mut Criterion) {
    let grid = Grid::new(12.0, 1024).unwrap();
    let mut group = c.benchmark_group("kernel_build_1024");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| build_kernel(6, false, 0.37, &grid, true))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| build_kernel(6, false, 0.37, &grid, false))
    });
    group.finish();
}

fn bench_order_residual(c: &mut Criterion) {
    let grid = Grid::new(12.0, 1024).unwrap();
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let xi = sample_gaussian(&grid, 0.37, 0.0, 1.0).unwrap();
    let mut group = c.benchmark_group("order_residual_z6_1024");
    group.sample_size(10);
    group.bench_function("cached_kernels", |b| {
        let cache = KernelCache::new();
        // warm the cache once so the loop measures the applies
        order_residual(&z6, &xi, &cache).unwrap();
        b.iter(|| order_residual(&z6, &xi, &cache).unwrap())
    });
    group.bench_function("cold_cache", |b| {
        b.iter(|| {
            let cache = KernelCache::new();
            order_residual(&z6, &xi, &cache).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_kernel_build, bench_order_residual);
criterion_main!(benches);
