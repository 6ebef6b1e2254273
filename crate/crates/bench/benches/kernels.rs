use std::hint::black_box;

use charp::decomp::{build_unbounded_ass, decompose_monomial};
use charp::frobenius::{frob_root_ceiling, frob_root_elimination, DEFAULT_CONFIRM, DEFAULT_MAX_E};
use charp::perfection::{fseq_verify, ClosureParams, FSequence};
use charp::{f_closure, frob_power, frob_root, GroebnerBudget, Ideal};
use charp_bench::{cusp, ideal, ring};
use criterion::{criterion_group, criterion_main, Criterion};

/// Same generators without the cached Gröbner bases.
fn fresh(i: &Ideal) -> Ideal {
    Ideal::new(i.ring(), i.gens().to_vec()).unwrap()
}

fn groebner(c: &mut Criterion) {
    let b = GroebnerBudget::default();
    let cyclic = ideal(&ring(32003, &["X", "Y", "Z"]), &["X + Y + Z", "X*Y + Y*Z + Z*X", "X*Y*Z - 1"]);
    c.bench_function("gb cyclic3 F_32003", |bn| bn.iter(|| black_box(fresh(&cyclic).canonical(&b).unwrap())));
    let twisted = ideal(&ring(7, &["X", "Y", "Z"]), &["X*Y - Z^2", "X^2 - Y*Z", "Y^3 - X*Z + 1"]);
    c.bench_function("gb twisted F_7", |bn| bn.iter(|| black_box(fresh(&twisted).canonical(&b).unwrap())));
}

fn frobenius(c: &mut Criterion) {
    let b = GroebnerBudget::default();
    let r = ring(3, &["X", "Y"]);
    let i = ideal(&r, &["X^2*Y - Y^3", "X^3 + X*Y"]);
    c.bench_function("frob power e=2", |bn| bn.iter(|| black_box(frob_power(&i, 2).unwrap())));
    let ip = frob_power(&i, 1).unwrap();
    c.bench_function("frob root elimination", |bn| bn.iter(|| black_box(frob_root(&fresh(&ip), &b).unwrap())));
    let m = ideal(&r, &["X^7*Y^2", "X^3*Y^5", "Y^9"]);
    c.bench_function("frob root monomial ceiling n=2", |bn| {
        bn.iter(|| black_box(frob_root_ceiling(&m, 2).unwrap()))
    });
    c.bench_function("frob root monomial elimination n=2", |bn| {
        bn.iter(|| black_box(frob_root_elimination(&fresh(&m), 2, &b).unwrap()))
    });
    let u = ideal(&cusp(), &["U"]);
    c.bench_function("F-closure of (U) in the cusp", |bn| {
        bn.iter(|| black_box(f_closure(&fresh(&u), DEFAULT_MAX_E, DEFAULT_CONFIRM, &b).unwrap()))
    });
}

fn sequences(c: &mut Criterion) {
    let b = GroebnerBudget::default();
    let r = ring(3, &["X", "Y", "Z"]);
    let mono = ideal(&r, &["X*Y*Z", "X^2*Y", "Y^3*Z^2", "X^4"]);
    c.bench_function("decompose monomial 3 vars", |bn| {
        bn.iter(|| black_box(decompose_monomial(&fresh(&mono), &b).unwrap()))
    });
    let gens = ideal(&r, &["X^2 + Y*Z", "X*Y"]);
    c.bench_function("fseq verify fg k=1 depth 3", |bn| {
        bn.iter(|| {
            let s = FSequence::fg_perfection(1, &fresh(&gens), ClosureParams::default());
            black_box(fseq_verify(&s, 3, &b).unwrap())
        })
    });
    c.bench_function("unbounded Ass p=5 depth 4", |bn| {
        bn.iter(|| black_box(build_unbounded_ass(5, 5, &[1, 2, 1, 1], 4, &b).unwrap()))
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(20);
    targets = groebner, frobenius, sequences
}
criterion_main!(kernels);
