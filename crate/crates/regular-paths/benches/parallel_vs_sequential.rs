//! Compares the rayon-backed entry points against their sequential twins.
//! Built with `--no-default-features` both sides run sequentially, which is
//! useful as a sanity baseline.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use regular_paths::oracle::{
    enumerate_signatures, enumerate_signatures_seq, enumerate_wiring_diagrams,
    enumerate_wiring_diagrams_seq, EnumerationBudget,
};
use regular_paths::signature::Signature;
use regular_paths::sweep::{subsystem_envelope_scan, subsystem_envelope_scan_seq};
use regular_paths::tableau::{phi_tableau, Tableau};
use regular_paths::word::Word;

fn six_tangent_tableau(n: usize) -> Tableau {
    let sigma = Signature::parse("xyzxy^2xz^3yxzy^2zx^2").unwrap();
    let mut omega = Word::empty(vec!['a', 'b', 'c', 'd']);
    for factor in sigma.irreducible_factorization().unwrap() {
        omega = omega.concat(&factor.associated_word().unwrap());
    }
    phi_tableau(&omega, n).unwrap()
}

fn bench_subset_scan(c: &mut Criterion) {
    let tableau = six_tangent_tableau(12);
    let mut group = c.benchmark_group("subset_envelope_scan_n12_m4");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| subsystem_envelope_scan(black_box(&tableau), 4).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| subsystem_envelope_scan_seq(black_box(&tableau), 4).unwrap())
    });
    group.finish();
}

fn bench_signature_census(c: &mut Criterion) {
    let budget = EnumerationBudget::default();
    let mut group = c.benchmark_group("signature_census_k3");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| enumerate_signatures(black_box(3), &budget).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| enumerate_signatures_seq(black_box(3), &budget).unwrap())
    });
    group.finish();
}

fn bench_wiring_diagrams(c: &mut Criterion) {
    let budget = EnumerationBudget::default();
    let mut group = c.benchmark_group("wiring_diagrams_n4_k2");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| enumerate_wiring_diagrams(black_box(4), 2, &budget).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| enumerate_wiring_diagrams_seq(black_box(4), 2, &budget).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_subset_scan,
    bench_signature_census,
    bench_wiring_diagrams
);
criterion_main!(benches);
