use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Symbol};

pub type Coeff = BigRational;

/// Sparse Laurent polynomial over Q.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(Coeff::one(), m)
    }

    pub fn var(s: Symbol) -> Self {
        Poly::monomial(Monomial::var(s))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// A single term `c * monomial`, i.e. a unit of the Laurent ring (when nonzero).
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(Coeff::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Coeff::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.symbols().cloned()).collect()
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for m in it {
            acc = acc.gcd_exponents(m);
        }
        acc
    }

    /// Componentwise maximum exponent over all terms.
    pub fn monomial_hull(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for m in it {
            acc = acc.lcm_exponents(m);
        }
        acc
    }

    /// Highest and lowest power of `x` appearing (0 if absent).
    pub fn degree_range(&self, x: &Symbol) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            let e = m.exponent(x);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (hi, lo)
        }
    }

    pub fn degree_in(&self, x: &Symbol) -> i32 {
        self.degree_range(x).0
    }

    /// Coefficients as a polynomial in `x`: exponent of `x` -> coefficient free of `x`.
    pub fn coeffs_in(&self, x: &Symbol) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(x))
                .or_default()
                .add_term(m.without(x), c.clone());
        }
        out
    }

    pub fn leading_coeff_in(&self, x: &Symbol) -> (i32, Poly) {
        let coeffs = self.coeffs_in(x);
        let (d, c) = coeffs.into_iter().next_back().unwrap_or((0, Poly::zero()));
        (d, c)
    }

    /// Divides out the monomial content, returning it with the quotient.
    pub fn strip_monomial(&self) -> (Monomial, Poly) {
        let c = self.monomial_content();
        if c.is_one() {
            (c, self.clone())
        } else {
            let inv = c.inv();
            (c, self.mul_monomial(&inv))
        }
    }

    /// Exact division in the Laurent ring. Returns `None` when `divisor`
    /// does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.is_term() {
            let (m, c) = divisor.leading().unwrap();
            let inv_c = c.recip();
            return Some(self.mul_term(&m.inv(), &inv_c));
        }
        // Every quotient term lies in the exponent box
        // [low(self) - low(divisor), high(self) - high(divisor)].
        let lo = self.monomial_content().div(&divisor.monomial_content());
        let hi = self.monomial_hull().div(&divisor.monomial_hull());
        let mut syms = self.symbols();
        syms.extend(divisor.symbols());
        let in_box = |t: &Monomial| {
            syms.iter().all(|s| {
                let e = t.exponent(s);
                e >= lo.exponent(s) && e <= hi.exponent(s)
            })
        };
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = rm.div(&lm);
            if !in_box(&t) {
                return None;
            }
            let c = rc / &lc;
            rem = rem.sub(&divisor.mul_term(&t, &c));
            quot.add_term(t, c);
        }
        Some(quot)
    }

    /// Rescales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Canonical associate in the Laurent ring: monomial content removed and
    /// leading coefficient 1.
    pub fn normalize_unit(&self) -> Poly {
        self.strip_monomial().1.monic()
    }

    /// Greatest common divisor in the Laurent ring Q[x^{±1}, ...], returned
    /// as its canonical associate (see [`Poly::normalize_unit`]).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        if self.is_term() || other.is_term() {
            return Poly::one();
        }
        let a = self.strip_monomial().1;
        let b = other.strip_monomial().1;
        if a == b {
            return a.monic();
        }
        match super::heugcd::heu_gcd(&a, &b) {
            Some(g) => g.normalize_unit(),
            None => gcd_recursive(&a, &b).normalize_unit(),
        }
    }

    /// Evaluates with a caller-supplied symbol assignment.
    pub fn eval<F, T>(&self, mut value: F) -> T
    where
        F: FnMut(&Symbol) -> T,
        T: Clone
            + num_traits::One
            + num_traits::Zero
            + std::ops::Mul<Output = T>
            + std::ops::Div<Output = T>
            + std::ops::Add<Output = T>,
        T: From<f64>,
    {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let cf = T::from(coeff_to_f64(c));
            acc = acc + cf * m.eval(&mut value);
        }
        acc
    }

    /// Substitutes each symbol by a rational function produced by `f`.
    pub fn map_symbols<F>(&self, f: &mut F) -> super::RatFunc
    where
        F: FnMut(&Symbol) -> super::RatFunc,
    {
        use super::RatFunc;
        let mut acc = RatFunc::zero();
        for (m, c) in &self.terms {
            let mut t = RatFunc::from_poly(Poly::constant(c.clone()));
            for (s, e) in m.factors() {
                let v = f(s);
                t = t.mul(&v.powi(*e).expect("substituted symbol must be nonzero"));
            }
            acc = acc.add(&t);
        }
        acc
    }
}

pub(crate) fn coeff_to_f64(c: &Coeff) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn content_in(p: &Poly, x: &Symbol) -> Poly {
    let mut g: Option<Poly> = None;
    for c in p.coeffs_in(x).into_values() {
        g = Some(match g {
            None => c.normalize_unit(),
            Some(acc) => acc.gcd(&c),
        });
        if g.as_ref().is_some_and(|g| g.is_one()) {
            break;
        }
    }
    g.unwrap_or_else(Poly::one)
}

fn primitive_in(p: &Poly, x: &Symbol) -> Poly {
    let c = content_in(p, x);
    if c.is_one() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides polynomial")
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `x`. Both must have
/// nonnegative exponents in `x`.
fn pseudo_rem(a: &Poly, b: &Poly, x: &Symbol) -> Poly {
    let (db, lb) = b.leading_coeff_in(x);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = r.leading_coeff_in(x);
        if dr < db {
            return r;
        }
        let shift = Monomial::power(x.clone(), dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift));
    }
}

/// gcd of ordinary polynomials without monomial content (up to units).
fn gcd_recursive(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let sa = a.symbols();
    let sb = b.symbols();
    if let Some(x) = sa.intersection(&sb).next().cloned() {
        let ca = content_in(a, &x);
        let cb = content_in(b, &x);
        let c = ca.gcd(&cb);
        let mut p = if ca.is_one() { a.clone() } else { a.div_exact(&ca).unwrap() };
        let mut q = if cb.is_one() { b.clone() } else { b.div_exact(&cb).unwrap() };
        loop {
            if p.degree_in(&x) < q.degree_in(&x) {
                std::mem::swap(&mut p, &mut q);
            }
            let r = pseudo_rem(&p, &q, &x);
            if r.is_zero() {
                break;
            }
            if r.degree_in(&x) == 0 {
                q = Poly::one();
                break;
            }
            p = q;
            q = primitive_in(&r, &x).monic();
        }
        let g = if q.is_one() { q } else { primitive_in(&q, &x) };
        c.mul(&g)
    } else {
        // A symbol of `a` that `b` lacks: gcd(a, b) = gcd(content_x(a), b).
        let x = sa.iter().chain(sb.iter()).next().cloned().unwrap();
        if sa.contains(&x) {
            content_in(a, &x).gcd(b)
        } else {
            content_in(b, &x).gcd(a)
        }
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints terms from the leading term down, e.g. `s^2*u - 2*s + 1/3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Poly {
        Poly::var(Symbol::new("s"))
    }
    fn u() -> Poly {
        Poly::var(Symbol::new("u"))
    }
    fn one() -> Poly {
        Poly::one()
    }

    #[test]
    fn arithmetic_cancels() {
        let p = s().add(&one());
        let q = s().sub(&one());
        let prod = p.mul(&q);
        assert_eq!(prod, s().mul(&s()).sub(&one()));
        assert!(prod.sub(&prod).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = s().mul(&s()).sub(&one());
        let b = s().sub(&one());
        assert_eq!(a.div_exact(&b).unwrap(), s().add(&one()));
        assert!(a.div_exact(&u().sub(&one())).is_none());
        // Laurent divisor
        let c = s().sub(&one()).mul_monomial(&Monomial::power(Symbol::new("u"), -2));
        let q = a.div_exact(&c).unwrap();
        assert_eq!(q.mul(&c), a);
    }

    #[test]
    fn gcd_multivariate() {
        let f = s().mul(&u()).sub(&one()); // su - 1
        let g = s().sub(&u()); // s - u
        let h = u().add(&Poly::from_int(2));
        let a = f.mul(&g).mul(&g);
        let b = f.mul(&g).mul(&h);
        let d = a.gcd(&b);
        assert_eq!(d, f.mul(&g).normalize_unit());
        assert!(f.gcd(&h).is_one());
    }

    #[test]
    fn gcd_ignores_monomial_units() {
        let a = s().sub(&one()).mul(&s()).mul(&u());
        let b = s().sub(&one()).mul_monomial(&Monomial::power(Symbol::new("s"), -3));
        assert_eq!(a.gcd(&b), s().sub(&one()));
    }

    #[test]
    fn display_orders_terms() {
        let p = s().mul(&s()).sub(&s().mul(&u()).scale(&Coeff::from_integer(2.into()))).add(&one());
        assert_eq!(p.to_string(), "s^2 - 2*s*u + 1");
    }
}
