use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ietkit::cli::load_spec;
use ietkit::exact::parse_scalar;
use ietkit::exec::Execution;
use ietkit::partition::level_partition;
use ietkit::symbolic::{enumerate_asymptotic_pairs, keane_check, orbit_gap_stats};
use ietkit::{Iet, Limits, Variant};

fn e3() -> Iet {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs/e3.iet");
    Iet::build(load_spec(&path).unwrap().spec).unwrap()
}

fn modes() -> [(&'static str, Limits); 2] {
    let parallel = Limits { execution: Execution::Parallel, ..Limits::default() };
    [("sequential", parallel.sequential()), ("parallel", parallel)]
}

fn bench_partition(c: &mut Criterion) {
    let iet = e3();
    let mut group = c.benchmark_group("level_partition");
    group.sample_size(10);
    for (name, limits) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 300), &limits, |b, lim| {
            b.iter(|| level_partition(&iet, 300, Variant::T, lim).unwrap())
        });
    }
    group.finish();
}

fn bench_keane(c: &mut Criterion) {
    let iet = e3();
    let mut group = c.benchmark_group("keane_check");
    for (name, limits) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 2000), &limits, |b, lim| {
            b.iter(|| keane_check(&iet, 2000, lim).unwrap())
        });
    }
    group.finish();
}

fn bench_pairs(c: &mut Criterion) {
    let iet = e3();
    let mut group = c.benchmark_group("asymptotic_pairs");
    for (name, limits) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 200), &limits, |b, lim| {
            b.iter(|| enumerate_asymptotic_pairs(&iet, 200, lim).unwrap())
        });
    }
    group.finish();
}

fn bench_gaps(c: &mut Criterion) {
    let iet = e3();
    let x = parse_scalar("1/10", iet.basis()).unwrap();
    let mut group = c.benchmark_group("orbit_gaps");
    group.sample_size(10);
    for (name, limits) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 5000), &limits, |b, lim| {
            b.iter(|| orbit_gap_stats(&iet, &x, 5000, lim).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_partition, bench_keane, bench_pairs, bench_gaps);
criterion_main!(benches);
