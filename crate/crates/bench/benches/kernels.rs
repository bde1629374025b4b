use criterion::{black_box, criterion_group, criterion_main, Criterion};

use shapeapprox_core::operators::MnOperator;
use shapeapprox_core::{best_qmonotone, best_uniform, build_generator, omega_dt, Func, OperatorSpec};

fn operators(c: &mut Criterion) {
    let mut g = c.benchmark_group("operators");
    for n in [32usize, 128] {
        let spec = OperatorSpec::bernstein(n).unwrap();
        g.bench_function(format!("bernstein_{n}_exp"), |b| {
            b.iter(|| spec.image_f64(black_box(&Func::Exp)))
        });
        let spec = OperatorSpec::genuine_durrmeyer(n).unwrap();
        g.bench_function(format!("genuine_{n}_exp"), |b| {
            b.iter(|| spec.image_f64(black_box(&Func::Exp)))
        });
    }
    let mn = MnOperator::new(2, 60).unwrap();
    g.bench_function("mn_2_60_exp", |b| {
        b.iter(|| mn.image(black_box(&Func::Exp), None))
    });
    g.finish();
}

fn generator(c: &mut Criterion) {
    let mut g = c.benchmark_group("generator");
    g.sample_size(10);
    for (n, r) in [(64usize, 1usize), (256, 2)] {
        g.bench_function(format!("build_{n}_{r}"), |b| {
            b.iter(|| build_generator(black_box(n), r, 256))
        });
    }
    g.finish();
}

fn moduli(c: &mut Criterion) {
    let f = |x: f64| x.sqrt();
    c.bench_function("omega_dt_2_phi", |b| {
        b.iter(|| omega_dt(&f, 2, 1.0, black_box(0.01)))
    });
}

fn linear_programs(c: &mut Criterion) {
    let mut g = c.benchmark_group("lp");
    g.sample_size(10);
    g.bench_function("best_uniform_exp_8", |b| {
        b.iter(|| best_uniform(&f64::exp, black_box(8), 257))
    });
    let f = |x: f64| (x - 0.5).max(0.0).powi(3);
    g.bench_function("best_qmonotone_trunc_q4_10", |b| {
        b.iter(|| best_qmonotone(&f, 4, black_box(10), 257, 257))
    });
    g.finish();
}

criterion_group!(benches, operators, generator, moduli, linear_programs);
criterion_main!(benches);
