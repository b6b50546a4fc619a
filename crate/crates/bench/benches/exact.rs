use criterion::{black_box, criterion_group, criterion_main, Criterion};

use linfrac::certify::{certify_period, period4k_map};
use linfrac::lyinv::{build_invariants, LynessSystem};
use linfrac::picaction::{lyness_model, nstar_model, spectral_radius, DEFAULT_PRECISION};
use linfrac::recmap::{degree_sequence, Direction};
use linfrac::{RecurrenceMap, Scalar};

fn cyclotomic(c: &mut Criterion) {
    let z = Scalar::zeta(16);
    let w = Scalar::one().checked_add(&Scalar::zeta_pow(16, 3)).unwrap();
    c.bench_function("zeta16 mul", |b| b.iter(|| black_box(&z).checked_mul(black_box(&w)).unwrap()));
    c.bench_function("zeta16 div", |b| b.iter(|| black_box(&z).checked_div(black_box(&w)).unwrap()));
}

fn charpolys(c: &mut Criterion) {
    let lyness = lyness_model(8).unwrap();
    c.bench_function("lyness_model(8) charpoly", |b| b.iter(|| black_box(&lyness).charpoly()));
    let chi = nstar_model(12, 14).unwrap().charpoly();
    c.bench_function("spectral radius chi(12,14)", |b| {
        b.iter(|| spectral_radius(black_box(&chi), DEFAULT_PRECISION).unwrap())
    });
}

fn degrees(c: &mut Criterion) {
    let generic = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
    c.bench_function("degree sequence generic k=3 n=12", |b| {
        b.iter(|| degree_sequence(black_box(&generic), Direction::Forward, 12, 1).unwrap())
    });
    let periodic = period4k_map(4).unwrap();
    c.bench_function("degree sequence period16 n=16", |b| {
        b.iter(|| degree_sequence(black_box(&periodic), Direction::Forward, 16, 1).unwrap())
    });
}

fn exact_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    let lyness = RecurrenceMap::lyness(3, Scalar::one()).unwrap();
    group.bench_function("certify lyness period 8", |b| b.iter(|| certify_period(&lyness, 8, 5, 1).unwrap()));
    let sys = LynessSystem::numeric(5, Scalar::from_int(2)).unwrap();
    group.bench_function("invariants k=5", |b| b.iter(|| build_invariants(black_box(&sys)).unwrap()));
    group.finish();
}

criterion_group!(benches, cyclotomic, charpolys, degrees, exact_checks);
criterion_main!(benches);
