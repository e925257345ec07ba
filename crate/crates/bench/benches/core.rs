use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gq_bench::{dyadic_window, random_pair};
use gq_core::bs::{enumerate, Params};
use gq_core::convolution::convolve;
use gq_core::groupoid::{check_groupoid_axioms, TrivialCocycle};
use gq_core::poisson::{crosscheck_batch, identity_batch};

fn windows(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [2, 3, 4] {
        let p = Params::new(n, 0.5, std::f64::consts::LN_2).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| enumerate(p, 3, 3)));
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let (g, w) = dyadic_window(3, 2, 2);
    c.bench_function("axioms n=3 level 2 shift 2", |b| {
        b.iter(|| check_groupoid_axioms(&g, black_box(&w.arrows)).unwrap())
    });
}

fn convolution(c: &mut Criterion) {
    let (g, w) = dyadic_window(2, 3, 2);
    let mut group = c.benchmark_group("convolve");
    for support in [10, 50, 200] {
        let (x, y) = random_pair(&w, support);
        group.bench_with_input(BenchmarkId::from_parameter(support), &(x, y), |b, (x, y)| {
            b.iter(|| convolve(&g, x, y, &TrivialCocycle).unwrap())
        });
    }
    group.finish();
}

fn poisson(c: &mut Criterion) {
    let mut group = c.benchmark_group("poisson");
    group.sample_size(10);
    group.bench_function("identities n=3 x20", |b| b.iter(|| identity_batch(3, 0.5, 20, 1).unwrap()));
    group.bench_function("raction n=3 x20", |b| b.iter(|| crosscheck_batch(3, 0.5, 20, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, windows, axioms, convolution, poisson);
criterion_main!(benches);
