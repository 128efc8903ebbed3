//! Sequential against parallel execution on the sweeps that dominate the
//! acceptance suite.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torsion_core::exec::Execution;
use torsion_core::harness::family::cyclic_sums;
use torsion_core::harness::theorems::check_annihilation_equivalence;
use torsion_core::harness::{FamilyBounds, FamilyFilter, ModuleFamily};
use torsion_core::homological::check_spectral_vnr;
use torsion_core::{Ideal, RingSpec};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn family_generation(c: &mut Criterion) {
    let ring = RingSpec::zn(8).build().unwrap();
    let mut group = c.benchmark_group("family_generation");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "Z/8, two generators, order ≤ 64"), |b| {
            b.iter(|| ModuleFamily::generate(&ring, FamilyBounds::new(2, 64), FamilyFilter::All, black_box(exec)))
        });
    }
    group.finish();
}

fn annihilation_sweep(c: &mut Criterion) {
    let ring = RingSpec::product(vec![RingSpec::gf(2), RingSpec::zn(4)]).build().unwrap();
    let family = ModuleFamily::generate(
        &ring,
        FamilyBounds::new(2, 32).with_cyclic_sums(),
        FamilyFilter::All,
        Execution::Sequential,
    );
    let pairs: Vec<(Ideal, usize)> =
        ring.ideals().into_iter().flat_map(|i| (0..family.len()).map(move |k| (i.clone(), k))).collect();
    let mut group = c.benchmark_group("annihilation_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "F2 x Z/4"), |b| {
            b.iter(|| exec.map(&pairs, |(i, k)| check_annihilation_equivalence(&family.modules[*k], i).unanimous()))
        });
    }
    group.finish();
}

fn spectral_grid(c: &mut Criterion) {
    let ring = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(3), RingSpec::gf(5)]).build().unwrap();
    let ideal = Ideal::principal(&ring, &[1, 1, 0]);
    let modules = cyclic_sums(&ring, 36);
    let mut group = c.benchmark_group("spectral_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "F2 x F3 x F5"), |b| {
            b.iter(|| exec.map(&modules, |m| check_spectral_vnr(&ideal, m, 3, Execution::Sequential).unwrap().passed()))
        });
    }
    group.finish();
}

criterion_group!(benches, family_generation, annihilation_sweep, spectral_grid);
criterion_main!(benches);
