use std::fmt;

use num_traits::{One, Zero};

use super::monomial::{Monomial, Symbol};
use super::poly::{Coeff, Poly};
use super::FieldError;

/// An element of Q(λ): a quotient of Laurent polynomials kept in reduced
/// canonical form. The denominator has no monomial content and leading
/// coefficient 1; numerator and denominator are coprime.
// Canonical forms are unique, so the structural hash agrees with `ratfunc_eq`.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Selector for [`ratfunc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Applies a field operation; `b` is ignored for the unary `Neg`/`Inv`.
pub fn ratfunc_arith(op: ArithOp, a: &RatFunc, b: Option<&RatFunc>) -> Result<RatFunc, FieldError> {
    let rhs = || b.ok_or(FieldError::MissingOperand);
    Ok(match op {
        ArithOp::Add => a.add(rhs()?),
        ArithOp::Sub => a.sub(rhs()?),
        ArithOp::Mul => a.mul(rhs()?),
        ArithOp::Div => a.div(rhs()?)?,
        ArithOp::Neg => a.neg(),
        ArithOp::Inv => a.inv()?,
    })
}

/// Decides `a == b` by checking that `a.num * b.den - b.num * a.den` vanishes.
pub fn ratfunc_eq(a: &RatFunc, b: &RatFunc) -> bool {
    a.num.mul(&b.den).sub(&b.num.mul(&a.den)).is_zero()
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(Poly::from_int(n))
    }

    pub fn from_coeff(c: Coeff) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        RatFunc::from_poly(Poly::monomial(m))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from_poly(Poly::var(Symbol::new(name)))
    }

    /// Builds `num / den` and brings it into canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_term() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        RatFunc::from_coprime(num, den)
    }

    /// Moves the denominator's unit part (monomial times constant) upstairs.
    /// The caller guarantees `num` and `den` are coprime.
    fn from_coprime(num: Poly, den: Poly) -> Self {
        let (mono, den) = den.strip_monomial();
        let lc = den.leading_coeff();
        if mono.is_one() && lc.is_one() {
            return RatFunc { num, den };
        }
        let inv_lc = lc.recip();
        RatFunc {
            num: num.mul_term(&mono.inv(), &inv_lc),
            den: den.scale(&inv_lc),
        }
    }

    /// Re-runs canonicalization; a no-op on values built through the API.
    pub fn normalized(&self) -> Self {
        RatFunc::canonical(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// `Some(m)` when the value is exactly the Laurent monomial `m`.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if !self.den.is_one() || !self.num.is_term() {
            return None;
        }
        let (m, c) = self.num.leading()?;
        c.is_one().then(|| m.clone())
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Henrici: with g = gcd(b, d), any common factor of the new numerator
        // and b·d/g already divides g.
        let g = self.den.gcd(&other.den);
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), other.den.div_exact(&g).unwrap())
        };
        let t = self.num.mul(&d1).add(&other.num.mul(&b1));
        if t.is_zero() {
            return RatFunc::zero();
        }
        if g.is_one() {
            return RatFunc::from_coprime(t, b1.mul(&other.den));
        }
        let g2 = t.gcd(&g);
        if g2.is_one() {
            RatFunc::from_coprime(t, b1.mul(&other.den))
        } else {
            RatFunc::from_coprime(
                t.div_exact(&g2).expect("gcd divides numerator"),
                b1.mul(&other.den.div_exact(&g2).expect("gcd divides denominator")),
            )
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        // Cross-cancel before multiplying to keep intermediate sizes small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), other.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        RatFunc::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, k: i32) -> Result<RatFunc, FieldError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coeff) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    /// Numerical evaluation; `None` if the denominator vanishes at the point.
    pub fn eval<F>(&self, mut value: F) -> Option<num_complex::Complex64>
    where
        F: FnMut(&Symbol) -> num_complex::Complex64,
    {
        let d: num_complex::Complex64 = self.den.eval(&mut value);
        if d.norm() == 0.0 {
            return None;
        }
        let n: num_complex::Complex64 = self.num.eval(&mut value);
        Some(n / d)
    }

    /// Substitutes symbols by rational functions.
    pub fn substitute<F>(&self, mut f: F) -> Result<RatFunc, FieldError>
    where
        F: FnMut(&Symbol) -> RatFunc,
    {
        let n = self.num.map_symbols(&mut f);
        let d = self.den.map_symbols(&mut f);
        n.div(&d)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        ratfunc_eq(self, other)
    }
}

impl Eq for RatFunc {}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<Monomial> for RatFunc {
    fn from(m: Monomial) -> Self {
        RatFunc::from_monomial(m)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl std::ops::Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::mul(&self, &rhs)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::add(&self, &rhs)
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1
}

/// Writes `mono * poly` as a product, e.g. `s*(u - 1)`, `s`, `u - 1`, `2*s`.
fn fmt_product(mono: &Monomial, poly: &Poly) -> String {
    if mono.is_one() {
        return poly.to_string();
    }
    if poly.is_one() {
        return mono.to_string();
    }
    if poly.is_constant() {
        // e.g. -2*s
        return Poly::monomial(mono.clone())
            .scale(&poly.leading_coeff())
            .to_string();
    }
    format!("{mono}*({poly})")
}

/// Prints as `numerator/denominator`, pulling monomial factors out of the
/// polynomial parts, e.g. `(s - 1)/(s*(u - 1))`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return f.write_str("0");
        }
        if self.den.is_one() && self.num.is_term() {
            return write!(f, "{}", self.num);
        }
        let (content, rest) = self.num.strip_monomial();
        let (up, down) = content.split_sign();
        let num_s = fmt_product(&up, &rest);
        let den_one = down.is_one() && self.den.is_one();
        if den_one {
            return f.write_str(&num_s);
        }
        let den_s = fmt_product(&down, &self.den);
        // Left-associative grammar: the numerator only needs parentheses
        // around a bare sum, the denominator around anything but an atom.
        let num_wrapped = if up.is_one() && needs_parens(&rest) {
            format!("({num_s})")
        } else {
            num_s
        };
        let den_atomic = !den_s.contains(['*', '/', '+', '-', ' ', '(']);
        let den_wrapped = if den_atomic { den_s } else { format!("({den_s})") };
        write!(f, "{num_wrapped}/{den_wrapped}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
