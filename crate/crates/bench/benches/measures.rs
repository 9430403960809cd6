use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use galmeasure_bench::{scenario, BENCH_IDS};
use galmeasure_core::counting::{brute_force_spectrum, tuple_spectrum};
use galmeasure_core::{closed_form, measure_at, measure_split_at, SubgroupLattice};

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    for id in BENCH_IDS {
        let group = scenario(id).group().clone();
        g.bench_with_input(BenchmarkId::from_parameter(id), &group, |b, group| {
            b.iter(|| SubgroupLattice::new(black_box(group.clone())).unwrap())
        });
    }
    g.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectrum");
    for id in BENCH_IDS {
        let s = scenario(id);
        g.bench_with_input(BenchmarkId::new("mobius", id), &s, |b, s| b.iter(|| tuple_spectrum(s.lattice(), black_box(3))));
    }
    for id in ["s3-over-a3", "d4-over-c4", "fifth-root"] {
        let s = scenario(id);
        g.bench_with_input(BenchmarkId::new("brute-force", id), &s, |b, s| {
            b.iter(|| brute_force_spectrum(s.lattice(), black_box(3), 1_000_000).unwrap())
        });
    }
    g.finish();
}

fn measures(c: &mut Criterion) {
    let mut g = c.benchmark_group("measure");
    for id in BENCH_IDS {
        let s = scenario(id).with_all_regular_targets();
        g.bench_with_input(BenchmarkId::new("regular", id), &s, |b, s| b.iter(|| measure_at(s, black_box(4)).unwrap()));
        g.bench_with_input(BenchmarkId::new("split", id), &s, |b, s| {
            b.iter(|| measure_split_at(s, black_box(4), None).unwrap())
        });
        let name = s.targets()[0].name.clone();
        g.bench_with_input(BenchmarkId::new("closed-form", id), &s, |b, s| b.iter(|| closed_form(s, &name).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, lattice, spectrum, measures);
criterion_main!(benches);
