use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::NumericError;

/// Quadrature controls: target absolute error and the deepest tanh-sinh
/// level (also the bisection depth limit for Gauss rules, times four).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadConfig {
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_level")]
    pub max_level: usize,
}

fn default_tol() -> f64 {
    1e-10
}

fn default_level() -> usize {
    10
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            tol: default_tol(),
            max_level: default_level(),
        }
    }
}

impl QuadConfig {
    pub fn with_tol(self, tol: f64) -> Self {
        QuadConfig { tol, ..self }
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(NumericError::InvalidParameter(format!("quadrature tolerance {} must be positive", self.tol)));
        }
        if self.max_level < 3 {
            return Err(NumericError::InvalidParameter("max_level must be at least 3".into()));
        }
        Ok(())
    }
}

/// A quadrature result with its error estimate.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuadValue {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
}

impl std::ops::Add for QuadValue {
    type Output = QuadValue;
    fn add(self, o: QuadValue) -> QuadValue {
        QuadValue {
            value: self.value + o.value,
            error: self.error + o.error,
            evals: self.evals + o.evals,
        }
    }
}

impl QuadValue {
    pub fn scale(self, c: Complex64) -> QuadValue {
        QuadValue {
            value: self.value * c,
            error: self.error * c.norm(),
            evals: self.evals,
        }
    }
}

/// A tanh-sinh node on [0, 1] with both distances to the ends kept
/// separately, so that s^a (1-s)^b can be formed in log space.
#[derive(Clone, Copy, Debug)]
pub struct TsNode {
    pub s: f64,
    pub one_minus_s: f64,
    pub ln_s: f64,
    pub ln_one_minus_s: f64,
}

const TAU_MAX: f64 = 7.5;

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn ts_node(tau: f64) -> (TsNode, f64) {
    let u = std::f64::consts::PI * tau.sinh();
    let ln_s = -softplus(-u);
    let ln_one_minus_s = -softplus(u);
    let node = TsNode {
        s: ln_s.exp(),
        one_minus_s: ln_one_minus_s.exp(),
        ln_s,
        ln_one_minus_s,
    };
    let ln_w = (std::f64::consts::PI * tau.cosh()).ln() + ln_s + ln_one_minus_s;
    (node, ln_w)
}

/// ∫_0^1 exp(g(s)) ds where `g` returns the logarithm of the integrand.
/// Endpoint singularities of power type are handled without special care.
/// `tol` is relative to the estimate of ∫|exp(g)|.
pub fn tanh_sinh_log<F: FnMut(&TsNode) -> Complex64>(mut g: F, tol: f64, max_level: usize) -> Result<QuadValue, NumericError> {
    let mut eval = |tau: f64| -> Result<Complex64, NumericError> {
        let (node, ln_w) = ts_node(tau);
        let lg = g(&node) + ln_w;
        if lg.re == f64::NEG_INFINITY {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let v = lg.exp();
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(NumericError::NoConvergence(format!("integrand not finite at s = {}", node.s)));
        }
        Ok(v)
    };
    let mut evals = 0usize;
    let mut h = 1.0;
    let n0 = (TAU_MAX / h) as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for j in -n0..=n0 {
        let v = eval(j as f64 * h)?;
        sum += v;
        abs_sum += v.norm();
        evals += 1;
    }
    let mut prev = sum * h;
    for level in 1..=max_level {
        h *= 0.5;
        let n = (TAU_MAX / h) as i64;
        let mut j = -n + if n % 2 == 0 { 1 } else { 0 };
        while j <= n {
            let v = eval(j as f64 * h)?;
            sum += v;
            abs_sum += v.norm();
            evals += 1;
            j += 2;
        }
        let cur = sum * h;
        let diff = (cur - prev).norm();
        if level >= 3 && diff <= tol * abs_sum * h {
            return Ok(QuadValue { value: cur, error: diff, evals });
        }
        prev = cur;
    }
    Err(NumericError::NoConvergence(format!("tanh-sinh did not reach {tol:e} by level {max_level}")))
}

/// (node, weight) pairs on [-1, 1].
type Rule = Vec<(f64, f64)>;

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| {
        let hi = GaussLegendre::new(20).expect("degree 20").as_node_weight_pairs().to_vec();
        let lo = GaussLegendre::new(10).expect("degree 10").as_node_weight_pairs().to_vec();
        (hi, lo)
    })
}

/// 20- and 10-point estimates, plus the 20-point estimate of ∫|f|.
fn gauss_pair<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, Complex64, f64) {
    let (hi, lo) = rules();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut i20 = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for &(x, w) in hi {
        let v = f(mid + half * x);
        i20 += v * w;
        l1 += v.norm() * w;
    }
    let i10 = lo.iter().map(|&(x, w)| f(mid + half * x) * w).sum::<Complex64>() * half;
    (i20 * half, i10, l1 * half)
}

/// ∫_lo^hi f by 20-point Gauss-Legendre, bisecting until the 10-point rule
/// agrees to `tol` per unit length, relative to the first estimate of ∫|f|.
pub fn gauss_adaptive<F: FnMut(f64) -> Complex64>(f: &mut F, lo: f64, hi: f64, tol: f64, max_depth: usize) -> Result<QuadValue, NumericError> {
    let mut out = QuadValue::default();
    let mut stack = vec![(lo, hi, 0usize)];
    let width = hi - lo;
    let mut scale = None;
    while let Some((a, b, depth)) = stack.pop() {
        let (i20, i10, l1) = gauss_pair(f, a, b);
        out.evals += 30;
        let diff = (i20 - i10).norm();
        if !diff.is_finite() {
            return Err(NumericError::NoConvergence(format!("non-finite integrand on [{a}, {b}]")));
        }
        let scale = *scale.get_or_insert(l1);
        if diff <= tol * scale * (b - a) / width {
            out.value += i20;
            out.error += diff;
        } else if depth >= max_depth {
            return Err(NumericError::NoConvergence(format!("Gauss bisection exceeded depth {max_depth}")));
        } else {
            let m = 0.5 * (a + b);
            stack.push((m, b, depth + 1));
            stack.push((a, m, depth + 1));
        }
    }
    Ok(out)
}
