//! Benchmarks for the three kernels the whole pipeline leans on: coset
//! enumeration of element-wise presentations, collection from the left, and
//! integer Smith reduction.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qtensor_bench::dihedral_pc;
use qtensor_core::coset::{enumerate, Strategy};
use qtensor_core::eqext::build_eq;
use qtensor_core::eta::build_nu_q;
use qtensor_core::snf::{smith_normal_form, IntMatrix};
use qtensor_core::table::FiniteGroupTable;
use std::hint::black_box;

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("todd-coxeter");
    group.sample_size(10);
    let d5 = build_nu_q(&FiniteGroupTable::dihedral(5), 3).unwrap();
    group.bench_function("nu3_d5_hlt", |b| {
        b.iter(|| enumerate(black_box(d5.fp()), &[], 1 << 13, Strategy::Hlt).unwrap())
    });
    group.bench_function("nu3_d5_felsch", |b| {
        b.iter(|| enumerate(black_box(d5.fp()), &[], 1 << 13, Strategy::Felsch).unwrap())
    });
    let c2 = build_nu_q(&FiniteGroupTable::cyclic(6), 2).unwrap();
    group.bench_function("nu2_c6_hlt", |b| {
        b.iter(|| enumerate(black_box(c2.fp()), &[], 1 << 12, Strategy::Hlt).unwrap())
    });
    group.finish();
}

fn bench_collection(c: &mut Criterion) {
    let mut group = c.benchmark_group("collection");
    let ext = build_eq(&dihedral_pc(10), 9).unwrap();
    let p = ext.result().clone();
    // A fixed pseudo-random word mixing all generators.
    let mut state = 0x2545f4914f6cdd1du64;
    let mut step = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let word: Vec<(usize, i64)> =
        (0..40).map(|_| ((step() % 5) as usize, (step() % 9) as i64 - 4)).collect();
    group.bench_function("collect_e9_d10_40_letters", |b| {
        b.iter(|| p.collect(black_box(&word)).unwrap())
    });
    group.bench_function("consistency_e9_d10", |b| {
        b.iter_batched(
            || ext.naive().clone(),
            |naive| naive.check_consistency().unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn bench_snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith-normal-form");
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut step = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut m = IntMatrix::zero(8, 8);
    for i in 0..8 {
        for j in 0..8 {
            m.set(i, j, (step() % 41) as i64 - 20);
        }
    }
    group.bench_function("random_8x8", |b| b.iter(|| smith_normal_form(black_box(&m))));
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_collection, bench_snf);
criterion_main!(benches);
