//! Rayon against the sequential fallback on the enumeration-heavy entry points.

use std::hint::black_box;

use accmod_core::algebra::find_witness;
use accmod_core::constructions::{build_family, chain, find_xy, verify_chain, VData};
use accmod_core::exactlin::FieldSpec;
use accmod_core::fixtures;
use accmod_core::lattice::{all_submodules, is_uniform_module_by_enumeration};
use accmod_core::Config;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn vdata(p: u64) -> VData {
    let k = fixtures::kronecker(FieldSpec::Prime(p));
    let w = find_witness(&k).unwrap();
    find_xy(&k, &w, &Config::default()).unwrap()
}

fn modes() -> [(&'static str, Config); 2] {
    let par = Config {
        parallel: true,
        ..Config::default()
    };
    [("parallel", par), ("sequential", Config::default().sequential())]
}

fn bench_submodules(c: &mut Criterion) {
    let vd = vdata(3);
    let space = build_family(&vd, 2).unwrap().space().clone();
    let mut g = c.benchmark_group("all_submodules V^2 GF(3)");
    g.sample_size(10);
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| all_submodules(black_box(&space), &cfg).unwrap().len())
        });
    }
    g.finish();
}

fn bench_uniform(c: &mut Criterion) {
    let vd = vdata(2);
    let w = build_family(&vd, 3).unwrap().w_rep();
    let mut g = c.benchmark_group("uniform by enumeration W(3) GF(2)");
    g.sample_size(10);
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| is_uniform_module_by_enumeration(black_box(&w), &cfg).unwrap())
        });
    }
    g.finish();
}

fn bench_chain(c: &mut Criterion) {
    let vd = vdata(3);
    let links = chain(&vd, 4).unwrap();
    let mut g = c.benchmark_group("verify_chain n=4 GF(3)");
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_chain(black_box(&links), &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_submodules, bench_uniform, bench_chain);
criterion_main!(benches);
