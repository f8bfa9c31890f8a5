use criterion::{criterion_group, criterion_main, Criterion};
use fdmono_bench::generic_scene;
use fdmono_core::numeric::{euler_integral_check, fd_series, period_vector, verify_monodromy_numeric, MonodromyOptions, PeriodSide, Shift};
use fdmono_core::Generator;
use num_complex::Complex64;

fn series_and_integral(c: &mut Criterion) {
    let a = Complex64::new(0.4, 0.0);
    let b = [Complex64::new(0.25, 0.0), Complex64::new(0.6, 0.0)];
    let cc = Complex64::new(1.3, 0.0);
    let x = [0.2, -0.35];
    c.bench_function("fd series, m=2", |bn| bn.iter(|| fd_series(a, &b, cc, &x, 1e-14).unwrap()));
    c.bench_function("series vs Euler integral, m=2", |bn| bn.iter(|| euler_integral_check(a, &b, cc, &x).unwrap()));
}

fn periods(c: &mut Criterion) {
    let scene = generic_scene(Shift::Hat);
    c.bench_function("lf period vector, m=2", |bn| bn.iter(|| period_vector(&scene, PeriodSide::Lf).unwrap()));
    let mut g = c.benchmark_group("continuation");
    g.sample_size(10);
    let gen = [Generator { p: 1, q: 2 }];
    g.bench_function("one loop, lf", |bn| {
        bn.iter(|| verify_monodromy_numeric(&scene, &gen, &MonodromyOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, series_and_integral, periods);
criterion_main!(benches);
