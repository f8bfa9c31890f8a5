use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A named indeterminate. Ordering is by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Symbol names follow `[a-zA-Z][a-zA-Z0-9_]*`.
    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A Laurent monomial: a finite product of symbols raised to nonzero
/// integer powers. Stored sorted by symbol name with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Symbol, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(sym: Symbol) -> Self {
        Monomial {
            factors: vec![(sym, 1)],
        }
    }

    pub fn power(sym: Symbol, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(sym, exp)],
            }
        }
    }

    /// Builds a monomial from arbitrary `(symbol, exponent)` pairs, merging
    /// repeated symbols and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i32)>>(pairs: I) -> Self {
        let mut factors: Vec<(Symbol, i32)> = pairs.into_iter().collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Symbol, i32)> = Vec::with_capacity(factors.len());
        for (s, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => merged.push((s, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        Monomial { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, i32)] {
        &self.factors
    }

    pub fn exponent(&self, sym: &Symbol) -> i32 {
        self.factors
            .binary_search_by(|(s, _)| s.cmp(sym))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.factors.iter().map(|(s, _)| s)
    }

    pub fn total_degree(&self) -> i64 {
        self.factors.iter().map(|(_, e)| *e as i64).sum()
    }

    fn merge_with(&self, other: &Monomial, sign: i32) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { factors: out }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, -1)
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|(s, e)| (s.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(s, e)| (s.clone(), e * k)).collect(),
        }
    }

    /// Componentwise minimum of exponents (missing symbols count as 0).
    pub fn gcd_exponents(&self, other: &Monomial) -> Monomial {
        let syms: Vec<Symbol> = self.symbols().chain(other.symbols()).cloned().collect();
        Monomial::from_pairs(
            syms.into_iter()
                .map(|s| {
                    let e = self.exponent(&s).min(other.exponent(&s));
                    (s, e)
                })
                .collect::<std::collections::BTreeMap<_, _>>(),
        )
    }

    /// Componentwise maximum of exponents (missing symbols count as 0).
    pub fn lcm_exponents(&self, other: &Monomial) -> Monomial {
        let syms: Vec<Symbol> = self.symbols().chain(other.symbols()).cloned().collect();
        Monomial::from_pairs(
            syms.into_iter()
                .map(|s| {
                    let e = self.exponent(&s).max(other.exponent(&s));
                    (s, e)
                })
                .collect::<std::collections::BTreeMap<_, _>>(),
        )
    }

    /// Splits into (positive part, negative part as a positive monomial).
    pub fn split_sign(&self) -> (Monomial, Monomial) {
        let pos = self.factors.iter().filter(|(_, e)| *e > 0).cloned().collect();
        let neg = self
            .factors
            .iter()
            .filter(|(_, e)| *e < 0)
            .map(|(s, e)| (s.clone(), -e))
            .collect();
        (Monomial { factors: pos }, Monomial { factors: neg })
    }

    pub fn without(&self, sym: &Symbol) -> Monomial {
        Monomial {
            factors: self.factors.iter().filter(|(s, _)| s != sym).cloned().collect(),
        }
    }

    pub fn eval<F, T>(&self, mut value: F) -> T
    where
        F: FnMut(&Symbol) -> T,
        T: Clone + std::ops::Mul<Output = T> + std::ops::Div<Output = T> + num_traits::One,
    {
        let mut acc = T::one();
        for (s, e) in &self.factors {
            let v = value(s);
            for _ in 0..e.unsigned_abs() {
                acc = if *e > 0 { acc * v.clone() } else { acc / v.clone() };
            }
        }
        acc
    }
}

/// Lexicographic order on exponent vectors, symbols compared by name.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return x.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&y.1),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, i32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(s, e)| (Symbol::new(s), *e)))
    }

    #[test]
    fn zero_exponents_are_dropped() {
        let a = m(&[("s", 1), ("u", 0), ("s", -1)]);
        assert!(a.is_one());
        assert_eq!(m(&[("s", 1)]).mul(&m(&[("s", -1)])), Monomial::one());
    }

    #[test]
    fn lex_order_by_symbol_name() {
        assert!(m(&[("s", 1)]) > m(&[("u", 5)]));
        assert!(m(&[("s", 2)]) > m(&[("s", 1), ("u", 1)]));
        assert!(m(&[("s", -1)]) < Monomial::one());
        assert!(m(&[("u", 1)]) > Monomial::one());
    }

    #[test]
    fn order_is_compatible_with_multiplication() {
        let a = m(&[("s", 1), ("u", -2)]);
        let b = m(&[("u", 3)]);
        let c = m(&[("s", -1), ("v", 1)]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }

    #[test]
    fn display() {
        assert_eq!(m(&[("u", -1), ("s", 2)]).to_string(), "s^2*u^-1");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
