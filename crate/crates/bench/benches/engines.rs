use criterion::{black_box, criterion_group, criterion_main, Criterion};

use gateswitch::budget::Budget;
use gateswitch::circseq::{two_phase_sequence, GateSet};
use gateswitch::ksets::{random_config, sweep_sequence};
use gateswitch::multiperm::{diameter, Composition};
use gateswitch::oracle::{enumerate_sequences, min_switches};

fn bench_two_phase(c: &mut Criterion) {
    let gs = GateSet::new(12, vec![1, 3, 6, 9, 11]).unwrap();
    c.bench_function("two_phase_n12", |b| {
        b.iter(|| two_phase_sequence(black_box(&gs)))
    });
}

fn bench_min_switches(c: &mut Criterion) {
    let budget = Budget::default();
    let gs = GateSet::new(7, vec![1, 3, 5]).unwrap();
    // Warm the cached successor graph outside the timing loop.
    min_switches(&gs, &budget).unwrap();
    c.bench_function("min_switches_n7", |b| {
        b.iter(|| min_switches(black_box(&gs), &budget).unwrap())
    });
}

fn bench_diameter(c: &mut Criterion) {
    let budget = Budget::default();
    let comp = Composition::new(vec![1, 3, 2, 1, 1]).unwrap();
    c.bench_function("diameter_13211", |b| {
        b.iter(|| diameter(black_box(&comp), &budget).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let cfg = random_config(10, 42);
    c.bench_function("sweep_n10", |b| {
        b.iter(|| sweep_sequence(black_box(&cfg)).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let budget = Budget::default();
    c.bench_function("enumerate_n4", |b| {
        b.iter(|| enumerate_sequences(black_box(4), &budget).unwrap().count())
    });
}

criterion_group!(
    benches,
    bench_two_phase,
    bench_min_switches,
    bench_diameter,
    bench_sweep,
    bench_enumeration
);
criterion_main!(benches);
