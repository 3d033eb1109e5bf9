use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hclab_core::hecke::{longest_hat_idempotent, longest_idempotent, HeckeAlgebra};
use hclab_core::{BitMatrix, FpMatrix, PrimeField};

fn hecke_multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("hecke_multiply");
    for n in [3usize, 4, 5] {
        let alg = HeckeAlgebra::new(n, PrimeField::new(3).unwrap()).unwrap();
        let a = longest_idempotent(&alg);
        let b = longest_hat_idempotent(&alg);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, _| {
            bch.iter(|| black_box(&a * &b))
        });
    }
    group.finish();
}

fn dense(field: PrimeField, n: usize) -> FpMatrix {
    FpMatrix::from_fn(field, n, n, |i, j| ((i * 31 + j * 17 + i * j * 7 + 3) % field.p() as usize) as u32)
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [64usize, 128, 256] {
        let m3 = dense(PrimeField::new(3).unwrap(), n);
        group.bench_with_input(BenchmarkId::new("f3", n), &n, |bch, _| bch.iter(|| black_box(m3.rank())));
        let m2 = BitMatrix::from_fp(&dense(PrimeField::TWO, n));
        group.bench_with_input(BenchmarkId::new("f2_bits", n), &n, |bch, _| bch.iter(|| black_box(m2.rank())));
    }
    group.finish();
}

criterion_group!(benches, hecke_multiply, rank);
criterion_main!(benches);
