use std::f64::consts::PI;

use fdmono_core::homology::HomologyBasis;
use fdmono_core::monodromy::{section7_golden, Representation};
use fdmono_core::numeric::special::ln_gamma;
use fdmono_core::numeric::*;
use fdmono_core::Generator;
use num_complex::Complex64;

fn reals(v: &[f64]) -> Vec<AlphaValue> {
    v.iter().map(|&x| AlphaValue::Real(x)).collect()
}

fn generic(shift: Shift) -> NumericScene {
    NumericScene::new(&reals(&[-0.7, -0.3, -0.4, 0.6, 0.8]), &[0.3, 0.6], shift).unwrap()
}

fn one_integral(shift: Shift) -> NumericScene {
    let mut a = reals(&[-0.7, 0.0, -0.4, 0.6, -0.5]);
    a[1] = AlphaValue::Int(1);
    NumericScene::new(&a, &[-0.3, 0.5], shift).unwrap()
}

/// α = (Σb − c, −b, c − a, a): the lf period over ℓ_{m+2} is the Euler integral.
fn euler_scene(a: f64, b: &[f64], c: f64, x: &[f64]) -> NumericScene {
    let mut alphas = vec![b.iter().sum::<f64>() - c];
    alphas.extend(b.iter().map(|bi| -bi));
    alphas.push(c - a);
    alphas.push(a);
    NumericScene::new(&reals(&alphas), x, Shift::Hat).unwrap()
}

fn extended_period(scene: &NumericScene) -> Complex64 {
    let basis = HomologyBasis::new(scene.params()).unwrap();
    let e = scene.evaluate(&basis.e_row[scene.m() + 2]).unwrap();
    let p = period_vector(scene, PeriodSide::Lf).unwrap();
    e.mul_vec(&p.values)[0]
}

fn beta_times_fd(a: f64, b: &[f64], c: f64, x: &[f64]) -> Complex64 {
    let cplx = |v: f64| Complex64::new(v, 0.0);
    let bs: Vec<Complex64> = b.iter().map(|&v| cplx(v)).collect();
    let f = fd_series(cplx(a), &bs, cplx(c), x, 1e-15).unwrap().value;
    (ln_gamma(cplx(a)) + ln_gamma(cplx(c - a)) - ln_gamma(cplx(c))).exp() * f
}

#[test]
fn extended_arc_reproduces_euler_integral_two_variables() {
    let (a, b, c, x) = (0.3, [0.2, 0.4], 1.5, [0.1, 0.2]);
    let got = extended_period(&euler_scene(a, &b, c, &x));
    let want = beta_times_fd(a, &b, c, &x);
    assert!((got - want).norm() <= 1e-8 * want.norm(), "{got} vs {want}");
}

#[test]
fn extended_arc_reproduces_gauss_integral() {
    let (a, b, c, x) = (0.45, [0.3], 1.2, [0.55]);
    let got = extended_period(&euler_scene(a, &b, c, &x));
    let want = beta_times_fd(a, &b, c, &x);
    assert!((got - want).norm() <= 1e-8 * want.norm(), "{got} vs {want}");
}

#[test]
fn integral_circle_matches_residue() {
    let s = one_integral(Shift::Check);
    let p = period_vector(&s, PeriodSide::Fin).unwrap();
    // γ_0 is minus the circle around x_1, where 1/u has a simple pole.
    let e = s.exponents(PeriodSide::Fin).unwrap();
    assert_eq!(e[1], Complex64::new(-1.0, 0.0));
    let x1 = s.points()[1];
    let mut log = Complex64::new(0.0, 0.0);
    for (j, &xj) in s.points().iter().enumerate() {
        if j != 1 {
            let d = x1 - xj;
            let arg = if d < 0.0 { PI } else { 0.0 };
            log += e[j] * Complex64::new(d.abs().ln(), arg);
        }
    }
    let want = -Complex64::new(0.0, 2.0 * PI) * log.exp();
    assert!((p.values[0] - want).norm() < 1e-10 * want.norm(), "{} vs {want}", p.values[0]);
}

#[test]
fn tolerance_scaling_within_error_estimates() {
    for (scene, side) in [(generic(Shift::Hat), PeriodSide::Lf), (generic(Shift::Check), PeriodSide::Fin)] {
        let fine = period_vector(&scene, side).unwrap();
        let mut coarse_scene = scene.clone();
        coarse_scene.quad = scene.quad.with_tol(10.0 * scene.quad.tol);
        let coarse = period_vector(&coarse_scene, side).unwrap();
        for k in 0..fine.values.len() {
            let d = (fine.values[k] - coarse.values[k]).norm();
            assert!(d <= coarse.errors[k].max(1e-14 * fine.values[k].norm()), "component {k}: {d:e} vs {:e}", coarse.errors[k]);
        }
    }
}

#[test]
fn zero_radius_loop_is_bit_identical() {
    for (scene, side) in [(generic(Shift::Hat), PeriodSide::Lf), (generic(Shift::Check), PeriodSide::Fin)] {
        let start = period_vector(&scene, side).unwrap();
        let sched = LoopSchedule::new(Generator { p: 1, q: 2 }, 1, 0.0);
        let end = continue_loop(&scene, &sched, side).unwrap();
        assert_eq!(start.values, end.values);
    }
}

#[test]
fn far_probe_does_not_wind() {
    let s = generic(Shift::Hat);
    let mut st = ContinuationState::new(&s, PeriodSide::Lf).unwrap();
    let probe = st.add_probe(Complex64::new(0.45, 2.0));
    let before = st.probes[probe].vertices[0].logs.clone();
    st.run(&s, &LoopSchedule::for_scene(&s, Generator { p: 1, q: 2 })).unwrap();
    let after = &st.probes[probe].vertices[0].logs;
    for (b, a) in before.iter().zip(after) {
        assert!((a - b).norm() < 1e-8, "{b} -> {a}");
    }
}

#[test]
fn moving_puncture_own_circle_is_carried() {
    // A probe next to the moving point winds with it around the centre.
    let s = generic(Shift::Hat);
    let mut st = ContinuationState::new(&s, PeriodSide::Lf).unwrap();
    let probe = st.add_probe(Complex64::new(0.3, 0.001));
    let before = st.probes[probe].vertices[0].logs.clone();
    st.run(&s, &LoopSchedule::for_scene(&s, Generator { p: 1, q: 2 })).unwrap();
    let after = &st.probes[probe].vertices[0].logs;
    assert!((after[2] - before[2] - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-9);
    assert!((after[1] - before[1]).norm() < 1e-12);
    assert!((after[0] - before[0]).norm() < 1e-8);
}

#[test]
fn uninvolved_integral_circle_is_loop_invariant() {
    let s = one_integral(Shift::Check);
    let start = period_vector(&s, PeriodSide::Fin).unwrap();
    for g in [Generator { p: 0, q: 2 }, Generator { p: 2, q: 3 }] {
        let end = continue_loop(&s, &LoopSchedule::for_scene(&s, g), PeriodSide::Fin).unwrap();
        let d = (end.values[0] - start.values[0]).norm();
        assert!(d < 1e-8 * start.values[0].norm(), "{g}: {d:e}");
    }
}

#[test]
fn section7_type_instance_on_23() {
    // α_0 = α_1 = 0, λ_3 = λ_2^{-1}, λ_5 = λ_4^{-1} in numbers.
    let (sigma, mu) = (0.35, 0.55);
    let mut a = reals(&[0.0, 0.0, sigma, 1.0 - sigma, mu, -1.0 - mu]);
    a[0] = AlphaValue::Int(0);
    a[1] = AlphaValue::Int(0);
    let s = NumericScene::new(&a, &[0.2, 0.45, 0.7], Shift::Hat).unwrap();
    assert_eq!(s.params().r(), 2);
    let g = Generator { p: 2, q: 3 };
    let rep = Representation::new(s.params()).unwrap();
    let numeric = s.evaluate(&rep.pair(g).m).unwrap();
    // the printed table at s = λ_2, u = λ_4 gives the same numbers
    let (_, table_m, _) = section7_golden().into_iter().find(|(h, _, _)| *h == g).unwrap();
    let (l2, l4) = (s.lambda(2), s.lambda(4));
    for i in 0..4 {
        for j in 0..4 {
            let v = table_m
                .get(i, j)
                .eval(|sym| if sym.name() == "s" { l2 } else { l4 })
                .unwrap();
            assert!((v - numeric.get(i, j)).norm() < 1e-12);
        }
    }
    let report = verify_monodromy_numeric(&s, &[g], &MonodromyOptions::default()).unwrap();
    assert!(report.passed(), "{report:#?}");
}

#[test]
fn doubling_steps_keeps_residuals_small() {
    let s = generic(Shift::Hat);
    let g = [Generator { p: 1, q: 3 }];
    let coarse = verify_monodromy_numeric(&s, &g, &MonodromyOptions { steps: Some(16), ..Default::default() }).unwrap();
    let fine = verify_monodromy_numeric(&s, &g, &MonodromyOptions { steps: Some(32), ..Default::default() }).unwrap();
    let (rc, rf) = (coarse.checks[0].residual.unwrap(), fine.checks[0].residual.unwrap());
    assert!(rf <= rc || rf <= 1e-6, "{rc:e} -> {rf:e}");
}

#[test]
fn loop_closure_on_generic_scene() {
    let s = generic(Shift::Check);
    let r = loop_closure_residual(&s, &LoopSchedule::for_scene(&s, Generator { p: 0, q: 2 }), PeriodSide::Fin).unwrap();
    assert!(r <= 2e-6, "{r:e}");
}

#[test]
fn schedule_rejections() {
    let s = generic(Shift::Hat);
    let too_wide = LoopSchedule::new(Generator { p: 1, q: 2 }, 8, 0.2);
    assert!(matches!(continue_loop(&s, &too_wide, PeriodSide::Lf), Err(NumericError::InvalidParameter(_))));
    let not_generator = LoopSchedule::new(Generator { p: 0, q: 3 }, 8, 0.05);
    assert!(continue_loop(&s, &not_generator, PeriodSide::Lf).is_err());
    assert!(matches!(continue_loop(&s, &too_wide, PeriodSide::Fin), Err(NumericError::BadScene(_)) | Err(NumericError::InvalidParameter(_))));
}
