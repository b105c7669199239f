use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use photon_am::decay_dynamics::{sz_curve_with, DecayParams};
use photon_am::radial_fields::{radial_profile_with, CavityConfig};
use photon_am::twin_entanglement::maximize_entanglement_with;
use photon_am::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn radial(c: &mut Criterion) {
    let mut group = c.benchmark_group("radial_profile");
    for kr in [100.0, 500.0] {
        let config = CavityConfig::from_kr(kr).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, kr), &config, |b, cfg| {
                b.iter(|| radial_profile_with(black_box(cfg), 2000, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn decay(c: &mut Criterion) {
    let mut group = c.benchmark_group("sz_curve");
    let params = DecayParams::from_ratio(1e3, 2000, 10.0).unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| sz_curve_with(black_box(&params), exec).unwrap()));
    }
    group.finish();
}

fn entangle(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximize_entanglement");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| maximize_entanglement_with(black_box(exec))));
    }
    group.finish();
}

criterion_group!(benches, radial, decay, entangle);
criterion_main!(benches);
