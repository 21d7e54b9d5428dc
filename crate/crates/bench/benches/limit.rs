use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dinv_core::discretization::points;
use dinv_core::rational::int;
use dinv_core::{build_recursive, expansion_check, sweep, ParamTable, Polynomial, Scheme};

fn limit(c: &mut Criterion) {
    let t = ParamTable::example1();
    let basis = build_recursive(&t);
    let origin = vec![int(0), int(0)];
    let f = Polynomial::parse("1 + x1 + x2", 2).unwrap().pow(6);
    for scheme in [Scheme::A, Scheme::B] {
        let pts = points(scheme, &t, &origin).unwrap();
        c.bench_function(&format!("expansion_check/{scheme}/m4"), |b| {
            b.iter(|| expansion_check(black_box(&f), &origin, 4, &pts, &basis).unwrap())
        });
        c.bench_function(&format!("sweep/{scheme}/m4"), |b| {
            b.iter(|| sweep(black_box(&f), &origin, 4, &pts, &basis, 0.25, 12).unwrap())
        });
    }
}

criterion_group!(benches, limit);
criterion_main!(benches);
