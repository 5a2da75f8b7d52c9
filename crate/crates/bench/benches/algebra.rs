use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fano_bench::{cubic, line_scheme, LINE_CASES};
use fano_core::idealkit::{buchberger, hilbert_data_of_basis};
use fano_core::projgeo::{LogScanner, DEFAULT_BUDGET};
use fano_core::voisin::nodes;
use fano_core::Field;

fn groebner(c: &mut Criterion) {
    for (n, d, m) in LINE_CASES {
        let ideal = line_scheme(10007, n, d, m);
        c.bench_function(&format!("buchberger lines ({n},{d},{m})"), |b| {
            b.iter(|| buchberger(black_box(&ideal)).unwrap())
        });
        let gb = buchberger(&ideal).unwrap();
        c.bench_function(&format!("hilbert lines ({n},{d},{m})"), |b| {
            b.iter(|| hilbert_data_of_basis(black_box(&gb)))
        });
    }
}

fn scan(c: &mut Criterion) {
    let ideal = line_scheme(31, 4, 3, 1);
    let sc = LogScanner::new(&Field::prime(31).unwrap(), 3).unwrap();
    c.bench_function("scan P^3 over F_31", |b| {
        b.iter(|| sc.common_zeros(black_box(ideal.generators()), DEFAULT_BUDGET).unwrap())
    });
}

fn voisin(c: &mut Criterion) {
    let nfc = cubic(2);
    c.bench_function("nodes r=2", |b| b.iter(|| nodes(black_box(&nfc)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groebner, scan, voisin
}
criterion_main!(benches);
