use criterion::{black_box, criterion_group, criterion_main, Criterion};

use twistbench::classify::solve_two_twists;
use twistbench::exactnum::CycNumber;
use twistbench::metricgrp::{enumerate_forms, FiniteAbelianGroup};
use twistbench::moddata::{fixture, validate};
use twistbench::twistdbl::{cocycle_by_index, twisted_double};

fn cyclotomic(c: &mut Criterion) {
    let a = &CycNumber::zeta(120, 7) + &CycNumber::zeta(120, 11);
    let b = &CycNumber::zeta(120, 13) - &CycNumber::from_int(3);
    c.bench_function("cyc_mul_120", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyc_inv_120", |bench| bench.iter(|| black_box(&b).inv().unwrap()));
}

fn data(c: &mut Criterion) {
    let md = fixture("double_c2x3_rank22").unwrap();
    c.bench_function("validate_rank22", |bench| bench.iter(|| validate(black_box(&md))));
    let g = FiniteAbelianGroup::parse("2,2,2").unwrap();
    let w = cocycle_by_index(&g, 127).unwrap();
    c.bench_function("double_c2x3_127", |bench| bench.iter(|| twisted_double(black_box(&w)).unwrap()));
    let g = FiniteAbelianGroup::parse("4,4").unwrap();
    c.bench_function("forms_c4x4", |bench| bench.iter(|| enumerate_forms(black_box(&g)).unwrap()));
}

fn classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    group.bench_function("two_twists", |bench| bench.iter(|| solve_two_twists().unwrap()));
    group.finish();
}

criterion_group!(benches, cyclotomic, data, classify);
criterion_main!(benches);
