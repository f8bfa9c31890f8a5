//! Parameter systems, the alignment ι, the intersection matrix H and the
//! coordinate vectors of the extended cycles.

mod basis;
mod random;
mod schema;

use num_complex::Complex64;
use thiserror::Error;

use crate::exactfield::{FieldError, Monomial, RatFunc};

pub use basis::{boundary_vectors, h_det_check, h_det_closed_form, intersection_matrix, pairing_closed_form, HomologyBasis};
pub use random::{random_system, RandomSpec};
pub use schema::{AlphaJson, ParamsJson};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomologyError {
    #[error("expected {expected} alpha entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("m must be at least 1")]
    BadDimension,
    #[error("all exponents are integral")]
    AllIntegral,
    #[error("alpha_{index} is non-integral but its lambda is the trivial monomial")]
    TrivialLambda { index: usize },
    #[error("at least two exponents must be non-integral")]
    FewerThanTwoNonIntegral,
    #[error("product of all lambdas is {product}, not 1")]
    ProductNotOne { product: String },
    #[error("invalid alignment: {0}")]
    BadAlignment(String),
    #[error("lambda_{index} is trivial, extension vector undefined")]
    DegenerateExtension { index: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid parameter file: {0}")]
    Schema(String),
}

/// One exponent α_i, recorded through its integrality and λ_i = exp(2πiα_i).
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaEntry {
    Integral(i64),
    NonIntegral {
        lambda: Monomial,
        numeric_hint: Option<Complex64>,
    },
}

impl AlphaEntry {
    pub fn symbolic(lambda: Monomial) -> Self {
        AlphaEntry::NonIntegral {
            lambda,
            numeric_hint: None,
        }
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, AlphaEntry::Integral(_))
    }

    pub fn lambda(&self) -> Monomial {
        match self {
            AlphaEntry::Integral(_) => Monomial::one(),
            AlphaEntry::NonIntegral { lambda, .. } => lambda.clone(),
        }
    }
}

/// The order i_0, …, i_{m+2} and its inverse ι.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    order: Vec<usize>,
    iota: Vec<usize>,
    r: usize,
}

impl Alignment {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// i_k
    pub fn i(&self, k: usize) -> usize {
        self.order[k]
    }

    /// ι(p)
    pub fn iota(&self, p: usize) -> usize {
        self.iota[p]
    }

    pub fn iota_all(&self) -> &[usize] {
        &self.iota
    }

    pub fn r(&self) -> usize {
        self.r
    }

    fn from_order(order: Vec<usize>, r: usize) -> Self {
        let mut iota = vec![0; order.len()];
        for (k, &i) in order.iter().enumerate() {
            iota[i] = k;
        }
        Alignment { order, iota, r }
    }

    /// Integral indices first, then non-integral ones, each in increasing
    /// order; index m+2 goes first if integral and last otherwise.
    pub fn derive(alphas: &[AlphaEntry]) -> Self {
        let n = alphas.len();
        let last = n - 1;
        let mut integral: Vec<usize> = (0..last).filter(|&i| alphas[i].is_integral()).collect();
        let mut non: Vec<usize> = (0..last).filter(|&i| !alphas[i].is_integral()).collect();
        if alphas[last].is_integral() {
            integral.insert(0, last);
        } else {
            non.push(last);
        }
        let r = integral.len();
        integral.append(&mut non);
        Alignment::from_order(integral, r)
    }

    /// Validates a user-supplied order against the integrality pattern.
    pub fn checked(alphas: &[AlphaEntry], order: Vec<usize>) -> Result<Self, HomologyError> {
        let n = alphas.len();
        let last = n - 1;
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(HomologyError::BadAlignment(format!("expected {n} indices, got {}", order.len())));
        }
        for &i in &order {
            if i >= n || seen[i] {
                return Err(HomologyError::BadAlignment(format!("{order:?} is not a permutation of 0..{last}")));
            }
            seen[i] = true;
        }
        let r = alphas.iter().filter(|a| a.is_integral()).count();
        if let Some(k) = (0..n).find(|&k| alphas[order[k]].is_integral() != (k < r)) {
            return Err(HomologyError::BadAlignment(format!(
                "position {k} (index {}) breaks the integral-first pattern",
                order[k]
            )));
        }
        if alphas[last].is_integral() && order[0] != last {
            return Err(HomologyError::BadAlignment(format!("index {last} is integral and must come first")));
        }
        if !alphas[last].is_integral() && order[last] != last {
            return Err(HomologyError::BadAlignment(format!("index {last} is non-integral and must come last")));
        }
        Ok(Alignment::from_order(order, r))
    }
}

/// A validated exponent system α_0, …, α_{m+2} with its alignment.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSystem {
    m: usize,
    alphas: Vec<AlphaEntry>,
    alignment: Alignment,
}

/// Checks the invariants of a candidate system and derives (or verifies) its alignment.
pub fn validate_params(
    m: usize,
    alphas: Vec<AlphaEntry>,
    alignment_override: Option<Vec<usize>>,
) -> Result<ParameterSystem, HomologyError> {
    if m == 0 {
        return Err(HomologyError::BadDimension);
    }
    if alphas.len() != m + 3 {
        return Err(HomologyError::WrongLength {
            expected: m + 3,
            got: alphas.len(),
        });
    }
    if alphas.iter().all(AlphaEntry::is_integral) {
        return Err(HomologyError::AllIntegral);
    }
    for (index, a) in alphas.iter().enumerate() {
        if let AlphaEntry::NonIntegral { lambda, .. } = a {
            if lambda.is_one() {
                return Err(HomologyError::TrivialLambda { index });
            }
        }
    }
    if alphas.iter().filter(|a| !a.is_integral()).count() < 2 {
        return Err(HomologyError::FewerThanTwoNonIntegral);
    }
    let product = alphas.iter().fold(Monomial::one(), |acc, a| acc.mul(&a.lambda()));
    if !product.is_one() {
        return Err(HomologyError::ProductNotOne {
            product: product.to_string(),
        });
    }
    let alignment = match alignment_override {
        Some(order) => Alignment::checked(&alphas, order)?,
        None => Alignment::derive(&alphas),
    };
    Ok(ParameterSystem { m, alphas, alignment })
}

impl ParameterSystem {
    pub fn new(m: usize, alphas: Vec<AlphaEntry>) -> Result<Self, HomologyError> {
        validate_params(m, alphas, None)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Size m+1 of the bases ℓ_0..ℓ_m and γ_0..γ_m.
    pub fn dim(&self) -> usize {
        self.m + 1
    }

    pub fn alphas(&self) -> &[AlphaEntry] {
        &self.alphas
    }

    pub fn alignment(&self) -> &Alignment {
        &self.alignment
    }

    pub fn r(&self) -> usize {
        self.alignment.r
    }

    pub fn is_integral(&self, i: usize) -> bool {
        self.alphas[i].is_integral()
    }

    pub fn lambda(&self, i: usize) -> Monomial {
        self.alphas[i].lambda()
    }

    pub fn lambda_rf(&self, i: usize) -> RatFunc {
        RatFunc::from_monomial(self.lambda(i))
    }

    /// λ_{i_k}
    pub fn lambda_at(&self, k: usize) -> RatFunc {
        self.lambda_rf(self.alignment.i(k))
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut s: Vec<String> = self
            .alphas
            .iter()
            .flat_map(|a| a.lambda().symbols().map(|x| x.name().to_string()).collect::<Vec<_>>())
            .collect();
        s.sort();
        s.dedup();
        s
    }

    /// Same exponents with a different (validated) alignment.
    pub fn realigned(&self, order: Vec<usize>) -> Result<Self, HomologyError> {
        validate_params(self.m, self.alphas.clone(), Some(order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_monomial;

    fn sym(s: &str) -> AlphaEntry {
        AlphaEntry::symbolic(parse_monomial(s).unwrap())
    }

    #[test]
    fn section7_system() {
        let alphas = vec![
            AlphaEntry::Integral(0),
            AlphaEntry::Integral(0),
            sym("s"),
            sym("s^-1"),
            sym("u"),
            sym("u^-1"),
        ];
        let ps = ParameterSystem::new(3, alphas).unwrap();
        assert_eq!(ps.r(), 2);
        assert_eq!(ps.alignment().order(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(ps.alignment().iota_all(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn rejections_in_order() {
        let ints = vec![AlphaEntry::Integral(1); 6];
        assert_eq!(ParameterSystem::new(3, ints).unwrap_err(), HomologyError::AllIntegral);
        let triv = vec![AlphaEntry::Integral(0), sym("1"), sym("s"), sym("s^-1")];
        assert_eq!(ParameterSystem::new(1, triv).unwrap_err(), HomologyError::TrivialLambda { index: 1 });
        let one = vec![AlphaEntry::Integral(0), AlphaEntry::Integral(0), AlphaEntry::Integral(0), sym("s")];
        assert_eq!(ParameterSystem::new(1, one).unwrap_err(), HomologyError::FewerThanTwoNonIntegral);
        let prod = vec![sym("a"), sym("b"), sym("c"), sym("a^-1")];
        assert!(matches!(ParameterSystem::new(1, prod), Err(HomologyError::ProductNotOne { .. })));
        let short = vec![sym("a"), sym("a^-1")];
        assert!(matches!(ParameterSystem::new(1, short), Err(HomologyError::WrongLength { .. })));
    }

    #[test]
    fn gauss_case() {
        let ps = ParameterSystem::new(1, vec![sym("a"), sym("b"), sym("c"), sym("a^-1*b^-1*c^-1")]).unwrap();
        assert_eq!(ps.r(), 0);
        assert_eq!(ps.alignment().order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn integral_infinity_goes_first() {
        let ps = ParameterSystem::new(1, vec![sym("a"), AlphaEntry::Integral(0), sym("a^-1"), AlphaEntry::Integral(2)]).unwrap();
        assert_eq!(ps.alignment().order(), &[3, 1, 0, 2]);
        assert_eq!(ps.r(), 2);
        for (k, &i) in ps.alignment().order().iter().enumerate() {
            assert_eq!(ps.alignment().iota(i), k);
        }
    }

    #[test]
    fn override_is_checked() {
        let alphas = vec![sym("a"), AlphaEntry::Integral(0), sym("b"), sym("c"), sym("a^-1*b^-1*c^-1")];
        assert!(validate_params(2, alphas.clone(), Some(vec![1, 0, 2, 3, 4])).is_ok());
        assert!(validate_params(2, alphas.clone(), Some(vec![1, 3, 2, 0, 4])).is_ok());
        assert!(validate_params(2, alphas.clone(), Some(vec![0, 1, 2, 3, 4])).is_err());
        assert!(validate_params(2, alphas.clone(), Some(vec![1, 0, 2, 4, 3])).is_err());
        assert!(validate_params(2, alphas, Some(vec![1, 0, 2, 3, 3])).is_err());
    }
}
