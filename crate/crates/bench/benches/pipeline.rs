use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gentlekit_bench::{kronecker, two_cycle, zigzag};
use gentlekit_core::bands::{find_minimal_band, reduce_band};
use gentlekit_core::decide::{brick_family, decide};
use gentlekit_core::field::FieldSpec;
use gentlekit_core::modules::{hom_dim_combinatorial, hom_dim_linear};

fn bench_decide(c: &mut Criterion) {
    let instances = [
        ("kronecker", kronecker()),
        ("two_cycle", two_cycle()),
        ("zigzag_8", zigzag(8)),
    ];
    let mut group = c.benchmark_group("decide");
    for (name, q) in &instances {
        group.bench_function(*name, |b| b.iter(|| decide(black_box(q)).unwrap()));
    }
    group.finish();
}

fn bench_minimal_band(c: &mut Criterion) {
    let q = two_cycle();
    c.bench_function("find_minimal_band/two_cycle", |b| {
        b.iter(|| find_minimal_band(black_box(&q)).unwrap())
    });
}

fn bench_hom(c: &mut Criterion) {
    let q = two_cycle();
    let wb = reduce_band(&q).unwrap();
    let family = brick_family(&q, &wb, 6).unwrap();
    let big = family.last().unwrap();
    let mut group = c.benchmark_group("hom_self");
    group.bench_function("combinatorial/power_6", |b| {
        b.iter(|| hom_dim_combinatorial(black_box(&q), big, big).unwrap())
    });
    group.bench_function("linear_rationals/power_6", |b| {
        b.iter(|| hom_dim_linear(black_box(&q), big, big, FieldSpec::Rationals).unwrap())
    });
    group.bench_function("linear_gf32003/power_6", |b| {
        b.iter(|| hom_dim_linear(black_box(&q), big, big, FieldSpec::PrimeField(32003)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_decide, bench_minimal_band, bench_hom);
criterion_main!(benches);
