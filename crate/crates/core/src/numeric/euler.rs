use num_complex::Complex64;
use serde::Serialize;

use crate::report::Check;

use super::quad::{tanh_sinh_log, QuadConfig};
use super::series::fd_series;
use super::special::ln_gamma;
use super::NumericError;

/// Series value, integral value and their relative disagreement.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EulerComparison {
    #[serde(serialize_with = "super::ser_complex")]
    pub series: Complex64,
    #[serde(serialize_with = "super::ser_complex")]
    pub integral: Complex64,
    pub rel_error: f64,
    pub tail_bound: f64,
    pub quad_error: f64,
}

impl EulerComparison {
    pub fn check(&self, tol: f64) -> Check {
        Check::from_bool("series vs Euler integral", self.rel_error <= tol, || {
            format!("relative error {:e} exceeds {tol:e}", self.rel_error)
        })
        .with_residual(self.rel_error)
    }
}

/// Γ(c)/(Γ(a)Γ(c−a)) ∫_0^1 s^{a−1}(1−s)^{c−a−1} Π(1−x_i s)^{−b_i} ds, which
/// is the integral over (1, ∞) of u dt/(t−1) after t = 1/s.
pub fn euler_integral(a: Complex64, b: &[Complex64], c: Complex64, x: &[f64], tol: f64, max_level: usize) -> Result<(Complex64, f64), NumericError> {
    if b.len() != x.len() {
        return Err(NumericError::InvalidParameter(format!("{} b-values for {} variables", b.len(), x.len())));
    }
    if !(c.re > a.re && a.re > 0.0) {
        return Err(NumericError::ConditionViolated(format!("need Re c > Re a > 0, got a = {a}, c = {c}")));
    }
    if let Some(xi) = x.iter().find(|&&xi| xi.is_nan() || xi >= 1.0) {
        return Err(NumericError::ConditionViolated(format!("x = {xi} is not below 1")));
    }
    let ln_norm = ln_gamma(c) - ln_gamma(a) - ln_gamma(c - a);
    let q = tanh_sinh_log(
        |n| {
            let mut lg = (a - 1.0) * n.ln_s + (c - a - 1.0) * n.ln_one_minus_s + ln_norm;
            for (bi, &xi) in b.iter().zip(x) {
                lg -= bi * (-xi * n.s).ln_1p();
            }
            lg
        },
        tol,
        max_level,
    )?;
    Ok((q.value, q.error))
}

/// Compares the truncated series with the Euler integral.
pub fn euler_integral_check(a: Complex64, b: &[Complex64], c: Complex64, x: &[f64]) -> Result<EulerComparison, NumericError> {
    euler_integral_check_with(a, b, c, x, &QuadConfig { tol: 1e-13, max_level: 12 })
}

/// [`euler_integral_check`] with explicit quadrature controls.
pub fn euler_integral_check_with(a: Complex64, b: &[Complex64], c: Complex64, x: &[f64], quad: &QuadConfig) -> Result<EulerComparison, NumericError> {
    quad.validate()?;
    let (integral, quad_error) = euler_integral(a, b, c, x, quad.tol, quad.max_level)?;
    let s = fd_series(a, b, c, x, 1e-14)?;
    let rel_error = (s.value - integral).norm() / s.value.norm().max(f64::MIN_POSITIVE);
    Ok(EulerComparison {
        series: s.value,
        integral,
        rel_error,
        tail_bound: s.tail_bound,
        quad_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn two_variable_example() {
        let r = euler_integral_check(c(0.3), &[c(0.2), c(0.4)], c(1.5), &[0.1, 0.2]).unwrap();
        assert!(r.rel_error <= 1e-8, "{r:?}");
    }

    #[test]
    fn zero_b_is_one() {
        let r = euler_integral_check(c(0.4), &[c(0.0), c(0.0)], c(1.1), &[0.3, -0.6]).unwrap();
        assert!((r.integral - c(1.0)).norm() < 1e-10);
    }

    #[test]
    fn symmetric_gauss_case() {
        let r = euler_integral_check(c(0.35), &[c(0.35)], c(0.7), &[0.45]).unwrap();
        assert!(r.rel_error <= 1e-8, "{r:?}");
    }

    #[test]
    fn complex_parameters() {
        let r = euler_integral_check(Complex64::new(0.4, 0.3), &[Complex64::new(0.1, -0.2)], Complex64::new(1.2, 0.5), &[-0.5]).unwrap();
        assert!(r.rel_error <= 1e-8, "{r:?}");
    }

    #[test]
    fn condition_violated() {
        assert!(matches!(
            euler_integral_check(c(1.2), &[c(0.1)], c(1.0), &[0.2]),
            Err(NumericError::ConditionViolated(_))
        ));
        assert!(matches!(
            euler_integral_check(c(-0.2), &[c(0.1)], c(1.0), &[0.2]),
            Err(NumericError::ConditionViolated(_))
        ));
    }
}
