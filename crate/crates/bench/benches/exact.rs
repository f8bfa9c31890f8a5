use criterion::{criterion_group, criterion_main, Criterion};
use fdmono_bench::random_params;
use fdmono_core::exactfield::parse_ratfunc;
use fdmono_core::homology::intersection_matrix;
use fdmono_core::monodromy::{section7_report, section7_system, verify_h_conjugation, Representation};

fn ratfunc_arithmetic(c: &mut Criterion) {
    let a = parse_ratfunc("(s^2*u - 3*s + 1)/(s*u - 1)").unwrap();
    let b = parse_ratfunc("(u^2 - s)/(s^2*u - 3*s + 1)").unwrap();
    c.bench_function("ratfunc add", |bn| bn.iter(|| a.add(&b)));
    c.bench_function("ratfunc mul", |bn| bn.iter(|| a.mul(&b)));
}

fn representation(c: &mut Criterion) {
    let s7 = section7_system();
    c.bench_function("section7 build and compare", |bn| {
        bn.iter(|| section7_report(&Representation::new(&s7).unwrap()))
    });
    let ps = random_params(4, 2, 11);
    c.bench_function("intersection matrix det, m=4", |bn| bn.iter(|| intersection_matrix(&ps).det().unwrap()));
    c.bench_function("representation, m=4", |bn| bn.iter(|| Representation::new(&ps).unwrap()));
    let rep = Representation::new(&ps).unwrap();
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("H-conjugation check, m=4", |bn| bn.iter(|| verify_h_conjugation(&rep, 3)));
    g.finish();
}

criterion_group!(benches, ratfunc_arithmetic, representation);
criterion_main!(benches);
