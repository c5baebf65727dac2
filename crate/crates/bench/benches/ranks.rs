use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use seqrank::analytic::find_roots;
use seqrank::linalg::{exact_det, hankel_window};
use seqrank::{mrank, urank, ExactPoly};
use seqrank_bench::{fibonacci, power_sums, rational_moments};

fn bench_mrank(c: &mut Criterion) {
    let mut g = c.benchmark_group("mrank");
    for r in [2, 4, 6] {
        let s = rational_moments(r);
        g.bench_with_input(BenchmarkId::new("rational", r), &s, |b, s| b.iter(|| mrank(black_box(s))));
    }
    let fib = fibonacci(16);
    g.bench_function("fibonacci_16", |b| b.iter(|| mrank(black_box(&fib))));
    g.finish();
}

fn bench_urank(c: &mut Criterion) {
    let mut g = c.benchmark_group("urank");
    for r in [2, 4, 6] {
        let s = power_sums(r);
        g.bench_with_input(BenchmarkId::new("integer_multiset", r), &s, |b, s| b.iter(|| urank(black_box(s))));
    }
    g.finish();
}

fn bench_det(c: &mut Criterion) {
    let mut g = c.benchmark_group("hankel_det");
    for m in [3, 5, 7] {
        let s = rational_moments(m + 1);
        let h = hankel_window(&s, m, 0).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(m + 1), &h, |b, h| b.iter(|| exact_det(black_box(h))));
    }
    g.finish();
}

fn bench_roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_roots");
    for n in [4, 8, 16] {
        // x^n - x - 1
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = -1;
        coeffs[1] = -1;
        coeffs[n] = 1;
        let p = ExactPoly::from_ints(&coeffs);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| find_roots(black_box(p), 1e-12)));
    }
    g.finish();
}

criterion_group!(benches, bench_mrank, bench_urank, bench_det, bench_roots);
criterion_main!(benches);
