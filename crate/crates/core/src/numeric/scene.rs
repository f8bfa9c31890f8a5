use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exactfield::{Monomial, RatMatrix, Symbol};
use crate::homology::{validate_params, AlphaEntry, ParameterSystem};

use super::quad::QuadConfig;
use super::NumericError;

/// One α entry in a numeric config: an integer, a real, or `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaValue {
    Int(i64),
    Real(f64),
    Complex([f64; 2]),
}

impl AlphaValue {
    pub fn value(&self) -> Complex64 {
        match *self {
            AlphaValue::Int(n) => Complex64::new(n as f64, 0.0),
            AlphaValue::Real(x) => Complex64::new(x, 0.0),
            AlphaValue::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    /// The integer this entry denotes, if any.
    pub fn integral(&self) -> Option<i64> {
        let z = self.value();
        let n = z.re.round();
        (z.im == 0.0 && (z.re - n).abs() <= INTEGRALITY_TOL).then_some(n as i64)
    }
}

const INTEGRALITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shift {
    #[default]
    Hat,
    Check,
    None,
}

/// Which period vector: arcs with u (lf) or arc-plus-circle cycles with 1/u (fin).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodSide {
    Lf,
    Fin,
}

impl Shift {
    pub fn side(self) -> Option<PeriodSide> {
        match self {
            Shift::Hat => Some(PeriodSide::Lf),
            Shift::Check => Some(PeriodSide::Fin),
            Shift::None => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopConfig {
    pub pair: [usize; 2],
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

fn default_steps() -> usize {
    64
}

/// The numeric config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub alphas: Vec<AlphaValue>,
    pub x: Vec<f64>,
    #[serde(default)]
    pub shift: Shift,
    #[serde(default)]
    pub quad: QuadConfig,
    #[serde(default, rename = "loop", skip_serializing_if = "Option::is_none")]
    pub loop_: Option<LoopConfig>,
}

impl SceneConfig {
    pub fn from_json(text: &str) -> Result<Self, NumericError> {
        serde_json::from_str(text).map_err(|e| NumericError::BadScene(e.to_string()))
    }
}

/// Numeric exponents on a real base point, with the symbolic system whose
/// λ-symbols `l<i>` evaluate to exp(2πiα_i).
#[derive(Clone, Debug)]
pub struct NumericScene {
    params: ParameterSystem,
    alpha: Vec<Complex64>,
    points: Vec<f64>,
    shift: Shift,
    pub quad: QuadConfig,
    pub loop_config: Option<LoopConfig>,
}

fn symbol_for(i: usize) -> Symbol {
    Symbol::new(&format!("l{i}"))
}

impl NumericScene {
    /// `x` holds x_1..x_m; 0 and 1 are adjoined.
    pub fn new(alphas: &[AlphaValue], x: &[f64], shift: Shift) -> Result<Self, NumericError> {
        if alphas.len() < 4 {
            return Err(NumericError::BadScene(format!("need at least 4 exponents, got {}", alphas.len())));
        }
        let m = alphas.len() - 3;
        if x.len() != m {
            return Err(NumericError::BadScene(format!("{} exponents need {m} points, got {}", alphas.len(), x.len())));
        }
        if alphas[m + 2].integral().is_some() {
            return Err(NumericError::BadScene("integral exponent at infinity is not supported numerically".into()));
        }
        let alpha: Vec<Complex64> = alphas.iter().map(AlphaValue::value).collect();
        let sum: Complex64 = alpha.iter().sum();
        if sum.norm() > 1e-12 {
            return Err(NumericError::BadScene(format!("exponents sum to {sum}, not 0")));
        }
        let mut points = Vec::with_capacity(m + 2);
        points.push(0.0);
        points.extend_from_slice(x);
        points.push(1.0);
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(NumericError::BadScene(format!("point {bad} is not finite")));
        }
        let mut order: Vec<usize> = (0..m + 2).collect();
        order.sort_by(|&a, &b| points[a].total_cmp(&points[b]));
        if order.windows(2).any(|w| points[w[0]] == points[w[1]]) {
            return Err(NumericError::BadScene("points must be distinct".into()));
        }
        order.push(m + 2);

        let mut entries = Vec::with_capacity(m + 3);
        let mut top = Monomial::one();
        for (i, a) in alphas.iter().enumerate().take(m + 2) {
            match a.integral() {
                Some(n) => entries.push(AlphaEntry::Integral(n)),
                None => {
                    let lam = Monomial::var(symbol_for(i));
                    top = top.mul(&lam);
                    entries.push(AlphaEntry::NonIntegral {
                        lambda: lam,
                        numeric_hint: Some(alpha[i]),
                    });
                }
            }
        }
        entries.push(AlphaEntry::NonIntegral {
            lambda: top.inv(),
            numeric_hint: Some(alpha[m + 2]),
        });
        let params = validate_params(m, entries, Some(order)).map_err(|e| match e {
            crate::homology::HomologyError::BadAlignment(msg) => {
                NumericError::BadScene(format!("integral punctures must lie left of the others on the real line ({msg})"))
            }
            e => NumericError::Homology(e),
        })?;
        let scene = NumericScene {
            params,
            alpha,
            points,
            shift,
            quad: QuadConfig::default(),
            loop_config: None,
        };
        scene.check_lambdas()?;
        scene.check_shift()?;
        Ok(scene)
    }

    pub fn from_config(cfg: &SceneConfig) -> Result<Self, NumericError> {
        cfg.quad.validate()?;
        let mut s = NumericScene::new(&cfg.alphas, &cfg.x, cfg.shift)?;
        s.quad = cfg.quad;
        s.loop_config = cfg.loop_;
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, NumericError> {
        NumericScene::from_config(&SceneConfig::from_json(text)?)
    }

    /// The same scene with another shift.
    pub fn with_shift(&self, shift: Shift) -> Result<Self, NumericError> {
        let s = NumericScene { shift, ..self.clone() };
        s.check_shift()?;
        Ok(s)
    }

    fn check_lambdas(&self) -> Result<(), NumericError> {
        for i in 0..self.alpha.len() {
            let direct = self.lambda(i);
            let via_symbols: Complex64 = self.params.lambda(i).eval(|s: &Symbol| self.symbol_value(s));
            if (direct - via_symbols).norm() > 1e-10 {
                return Err(NumericError::BadScene(format!(
                    "exp(2πiα_{i}) = {direct} disagrees with its λ-monomial value {via_symbols}"
                )));
            }
        }
        Ok(())
    }

    fn check_shift(&self) -> Result<(), NumericError> {
        if self.shift == Shift::None {
            return Ok(());
        }
        let m = self.m();
        let al = self.params.alignment();
        for k in [m, m + 1, m + 2] {
            if self.params.is_integral(al.i(k)) {
                return Err(NumericError::ConditionViolated(format!(
                    "α_{} must be non-integral for the shifted identification",
                    al.i(k)
                )));
            }
        }
        let s = self.alpha[al.i(m + 1)] + self.alpha[al.i(m + 2)];
        if s.norm() < 1e-12 {
            return Err(NumericError::ConditionViolated(format!(
                "α_{} + α_{} = 0",
                al.i(m + 1),
                al.i(m + 2)
            )));
        }
        let shifted = self.shifted_alpha();
        let floor = if self.shift == Shift::Hat { -1 } else { 0 };
        for (i, a) in shifted.iter().enumerate() {
            if self.params.is_integral(i) {
                let n = a.re.round() as i64;
                if n <= floor {
                    let name = if self.shift == Shift::Hat { "hat" } else { "check" };
                    return Err(NumericError::ConditionViolated(format!("{name}-shifted α_{i} = {n} is excluded")));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.params.m()
    }

    pub fn params(&self) -> &ParameterSystem {
        &self.params
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    /// x_0..x_{m+1} (x_0 = 0, x_{m+1} = 1).
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// exp(2πiα_i), exactly 1 for integral entries.
    pub fn lambda(&self, i: usize) -> Complex64 {
        if self.params.is_integral(i) {
            return Complex64::new(1.0, 0.0);
        }
        (Complex64::new(0.0, 2.0 * PI) * self.alpha[i]).exp()
    }

    pub fn symbol_value(&self, s: &Symbol) -> Complex64 {
        let i: usize = s.name()[1..].parse().expect("scene symbols are l<index>");
        self.lambda(i)
    }

    /// α̂ or α̌ according to the scene's shift (α itself for `none`).
    pub fn shifted_alpha(&self) -> Vec<Complex64> {
        let m = self.m();
        let al = self.params.alignment();
        let sign = match self.shift {
            Shift::Hat => 1.0,
            Shift::Check => -1.0,
            Shift::None => return self.alpha.clone(),
        };
        let mut a = self.alpha.clone();
        a[al.i(m + 1)] += sign;
        a[al.i(m + 2)] += sign;
        a[m + 1] -= sign;
        a[m + 2] -= sign;
        a
    }

    /// Exponents e_0..e_{m+1} of the integrand Π (t − x_j)^{e_j} dt on a side.
    pub fn exponents(&self, side: PeriodSide) -> Result<Vec<Complex64>, NumericError> {
        let want = match side {
            PeriodSide::Lf => Shift::Hat,
            PeriodSide::Fin => Shift::Check,
        };
        if self.shift != want {
            return Err(NumericError::BadScene(format!("side {side:?} needs shift {want:?}, scene has {:?}", self.shift)));
        }
        let shifted = self.shifted_alpha();
        let last = self.params.alignment().i(self.m() + 1);
        let sign = if side == PeriodSide::Lf { 1.0 } else { -1.0 };
        Ok((0..self.m() + 2)
            .map(|j| sign * shifted[j] - if j == last { 1.0 } else { 0.0 })
            .collect())
    }

    /// Smallest distance between two finite punctures.
    pub fn min_gap(&self) -> f64 {
        let mut p = self.points.clone();
        p.sort_by(f64::total_cmp);
        p.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// Evaluates a symbolic matrix at this scene's λ values.
    pub fn evaluate(&self, m: &RatMatrix) -> Result<CMatrix, NumericError> {
        let (rows, cols) = m.shape();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = m
                    .get(i, j)
                    .eval(|s| self.symbol_value(s))
                    .ok_or_else(|| NumericError::BadScene(format!("entry [{i}][{j}] has a pole at the scene's λ values")))?;
                data.push(v);
            }
        }
        Ok(CMatrix { rows, cols, data })
    }
}

/// A small dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> CMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        CMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ‖a − b‖ / ‖reference‖
pub fn relative_residual(a: &[Complex64], b: &[Complex64], reference: &[Complex64]) -> f64 {
    let d: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&d) / norm(reference).max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reals(v: &[f64]) -> Vec<AlphaValue> {
        v.iter().map(|&x| AlphaValue::Real(x)).collect()
    }

    #[test]
    fn generic_scene() {
        let s = NumericScene::new(&reals(&[-0.7, -0.3, -0.4, 0.6, 0.8]), &[0.3, 0.6], Shift::Hat).unwrap();
        assert_eq!(s.params().alignment().order(), &[0, 1, 2, 3, 4]);
        assert_eq!(s.params().r(), 0);
        let e = s.exponents(PeriodSide::Lf).unwrap();
        assert!((e[3].re + 0.4).abs() < 1e-15 && (e[0].re + 0.7).abs() < 1e-15);
        assert!(s.exponents(PeriodSide::Fin).is_err());
        let f = s.with_shift(Shift::Check).unwrap().exponents(PeriodSide::Fin).unwrap();
        assert!((f[3].re + 1.6).abs() < 1e-15 && (f[1].re - 0.3).abs() < 1e-15);
    }

    #[test]
    fn integral_entry_goes_left() {
        let mut a = reals(&[-0.7, 0.0, -0.4, 0.6, -0.5]);
        a[1] = AlphaValue::Int(1);
        let s = NumericScene::new(&a, &[-0.3, 0.5], Shift::Hat).unwrap();
        assert_eq!(s.params().alignment().order(), &[1, 0, 2, 3, 4]);
        assert_eq!(s.params().r(), 1);
        assert!(matches!(NumericScene::new(&a, &[0.3, 0.5], Shift::Hat), Err(NumericError::BadScene(_))));
    }

    #[test]
    fn rejections() {
        let a = reals(&[-0.7, -0.3, -0.4, 0.6, 0.7]);
        assert!(matches!(NumericScene::new(&a, &[0.3, 0.6], Shift::Hat), Err(NumericError::BadScene(_))));
        let mut a = reals(&[-0.7, -0.3, 0.0, 1.0, 0.0]);
        a[4] = AlphaValue::Int(0);
        assert!(matches!(NumericScene::new(&a, &[0.3, 0.6], Shift::Hat), Err(NumericError::BadScene(_))));
        let a = reals(&[-0.7, -0.3, -0.4, 0.6, 0.8]);
        assert!(NumericScene::new(&a, &[0.3, 0.3], Shift::Hat).is_err());
        // α_{i_{m+1}} + α_{i_{m+2}} = 0
        let a = reals(&[-0.7, 0.3, 0.4, 0.6, -0.6]);
        assert!(matches!(NumericScene::new(&a, &[0.3, 0.6], Shift::Hat), Err(NumericError::ConditionViolated(_))));
        assert!(NumericScene::new(&a, &[0.3, 0.6], Shift::None).is_ok());
    }

    #[test]
    fn config_round_trip() {
        let text = r#"{"alphas": [[-0.7, 0.0], -0.3, -0.4, 0.6, 0.8], "x": [0.3, 0.6], "shift": "check",
                       "quad": {"tol": 1e-9, "max_level": 9}, "loop": {"pair": [1, 2], "steps": 32}}"#;
        let s = NumericScene::from_json(text).unwrap();
        assert_eq!(s.shift(), Shift::Check);
        assert_eq!(s.quad.max_level, 9);
        assert_eq!(s.loop_config.unwrap().pair, [1, 2]);
        assert!(SceneConfig::from_json(r#"{"alphas": [], "x": [], "bogus": 1}"#).is_err());
    }
}
