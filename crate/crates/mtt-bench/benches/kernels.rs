use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mtt_core::algebra::{Ring, Trace};
use mtt_core::determinant::tau_det_with;
use mtt_core::forests::rhs_mtkz;
use mtt_core::graph::WeightMode;
use mtt_core::harness::{generate_random_instance, HolonomySampling, RandomOptions};

fn bench_tau_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_det");
    for n in [4usize, 5, 6] {
        let inst = generate_random_instance(
            7,
            n,
            n - 1,
            Ring::Quaternion,
            Trace::real_part(Ring::Quaternion).unwrap(),
            &RandomOptions::default(),
        )
        .unwrap();
        let lap = inst.build_laplacian().unwrap();
        let minor = lap.principal_submatrix(n - 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &minor, |b, m| {
            b.iter(|| tau_det_with(m, &inst.trace, 12).unwrap())
        });
    }
    group.finish();
}

fn bench_forest_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("forest_sum");
    for n in [4usize, 5, 6] {
        let inst = generate_random_instance(
            7,
            n,
            n - 1,
            Ring::Quaternion,
            Trace::real_part(Ring::Quaternion).unwrap(),
            &RandomOptions {
                holonomy: HolonomySampling::Unitary,
                symmetric_conj: true,
                weight_mode: WeightMode::SymbolicSymmetric,
            },
        )
        .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, i| {
            b.iter(|| rhs_mtkz(i).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_tau_det, bench_forest_sum);
criterion_main!(benches);
