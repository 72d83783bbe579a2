use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use latzeta::arith::rep_table;
use latzeta::boundary::certify_nonvanishing;
use latzeta::detlap::{log_det_even, log_det_odd};
use latzeta::ruelle::{g_direct, g_poisson, log_l_euler, log_l_mobius, log_l_series};
use latzeta::tauber::{partial_sum_m_sieved, partial_sum_m_sweep};
use latzeta::{Complex64, Truncation};
use latzeta_bench::characters;

fn lattice_sums(c: &mut Criterion) {
    let s = Complex64::new(1.5, 0.0);
    let tr = Truncation::for_s(s);
    let mut group = c.benchmark_group("g");
    for (name, chi) in characters(3) {
        group.bench_with_input(BenchmarkId::new("direct", name), &chi, |b, chi| {
            b.iter(|| g_direct(black_box(s), chi, 3, &tr).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("poisson", name), &chi, |b, chi| {
            b.iter(|| g_poisson(black_box(s), chi, 3, &tr).unwrap())
        });
    }
    group.finish();
}

fn log_l_routes(c: &mut Criterion) {
    let s = Complex64::new(1.5, 0.0);
    let tr = Truncation::for_s(s);
    let chi = &characters(2)[1].1;
    let mut group = c.benchmark_group("log_l");
    group.sample_size(20);
    group.bench_function("euler", |b| b.iter(|| log_l_euler(black_box(s), chi, 2, &tr).unwrap()));
    group.bench_function("mobius", |b| b.iter(|| log_l_mobius(black_box(s), chi, 2, &tr).unwrap()));
    group.bench_function("series", |b| b.iter(|| log_l_series(black_box(s), chi, 2, &tr).unwrap()));
    group.finish();
}

fn arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("arith");
    for nu in [2, 4, 8] {
        group.bench_with_input(BenchmarkId::new("rep_table_1e5", nu), &nu, |b, &nu| {
            b.iter(|| rep_table(nu, black_box(100_000)))
        });
    }
    group.sample_size(20);
    group.bench_function("certificate_8_3_5", |b| b.iter(|| certify_nonvanishing(8, 3, black_box(5), 100).unwrap()));
    group.finish();
}

fn determinants(c: &mut Criterion) {
    let tr = Truncation::for_s(Complex64::new(1.0, 0.0));
    let mut group = c.benchmark_group("log_det");
    for (name, chi) in characters(3) {
        group.bench_with_input(BenchmarkId::new("odd_nu3", name), &chi, |b, chi| {
            b.iter(|| log_det_odd(1, chi, black_box(Complex64::new(1.0, 0.0)), &tr).unwrap())
        });
    }
    for (name, chi) in characters(2) {
        group.bench_with_input(BenchmarkId::new("even_nu2", name), &chi, |b, chi| {
            b.iter(|| log_det_even(1, chi, black_box(1.0), &tr).unwrap())
        });
    }
    group.finish();
}

fn partial_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("partial_sum_m");
    group.sample_size(10);
    group.bench_function("sweep_nu2_1e5", |b| b.iter(|| partial_sum_m_sweep(2, black_box(100_000), 1.0)));
    group.bench_function("sieved_nu2_1e5", |b| b.iter(|| partial_sum_m_sieved(2, black_box(100_000), 1.0)));
    group.bench_function("sieved_nu4_1e5", |b| b.iter(|| partial_sum_m_sieved(4, black_box(100_000), 1.0)));
    group.finish();
}

criterion_group!(benches, lattice_sums, log_l_routes, arithmetic, determinants, partial_sums);
criterion_main!(benches);
