//! Heuristic gcd of integer polynomials: evaluate the main variable at a
//! large integer ξ, take the gcd of the images recursively, and read the
//! candidate back off its balanced ξ-adic digits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Symbol};
use super::poly::Poly;

type IPoly = BTreeMap<Monomial, BigInt>;

const ATTEMPTS: usize = 6;

/// gcd of two nonzero polynomials with nonnegative exponents, up to a unit
/// of Q. `None` when the heuristic gives up.
pub(super) fn heu_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut vars: Vec<Symbol> = a.symbols().into_iter().collect();
    vars.extend(b.symbols());
    vars.sort();
    vars.dedup();
    let h = heu(&to_integer(a), &to_integer(b), &vars)?;
    Some(Poly::from_terms(h.into_iter().map(|(m, c)| (m, BigRational::from_integer(c)))))
}

/// Clears denominators and integer content.
fn to_integer(p: &Poly) -> IPoly {
    let l = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let f: IPoly = p
        .terms()
        .map(|(m, c)| (m.clone(), c.numer() * (&l / c.denom())))
        .collect();
    let c = content(&f);
    f.into_iter().map(|(m, x)| (m, x / &c)).collect()
}

fn content(f: &IPoly) -> BigInt {
    f.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn norm(f: &IPoly) -> BigInt {
    f.values().map(BigInt::abs).max().unwrap_or_default()
}

/// Leading coefficient in lex order on `vars`.
fn lex_lc<'a>(f: &'a IPoly, vars: &[Symbol]) -> &'a BigInt {
    f.iter()
        .max_by_key(|(m, _)| vars.iter().map(|v| m.exponent(v)).collect::<Vec<_>>())
        .map(|(_, c)| c)
        .expect("nonzero polynomial")
}

fn eval_at(f: &IPoly, x: &Symbol, xi: &BigInt) -> IPoly {
    let mut out = IPoly::new();
    for (m, c) in f {
        let v = c * xi.pow(m.exponent(x) as u32);
        let slot = out.entry(m.without(x)).or_default();
        *slot += v;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn balanced_rem(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

fn interpolate(mut h: IPoly, x: &Symbol, xi: &BigInt) -> IPoly {
    let mut out = IPoly::new();
    let mut i = 0;
    while !h.is_empty() {
        let mut next = IPoly::new();
        for (m, c) in h {
            let d = balanced_rem(&c, xi);
            let rest = (c - &d) / xi;
            if !d.is_zero() {
                out.insert(m.mul(&Monomial::power(x.clone(), i)), d);
            }
            if !rest.is_zero() {
                next.insert(m, rest);
            }
        }
        h = next;
        i += 1;
    }
    out
}

fn divides(h: &IPoly, f: &IPoly) -> bool {
    let to_poly = |p: &IPoly| Poly::from_terms(p.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))));
    to_poly(f).div_exact(&to_poly(h)).is_some()
}

/// gcd in Z[vars] of two nonzero integer polynomials.
fn heu(f: &IPoly, g: &IPoly, vars: &[Symbol]) -> Option<IPoly> {
    let Some((x, rest)) = vars.split_first() else {
        let c = content(f).gcd(&content(g));
        return Some(IPoly::from([(Monomial::one(), c)]));
    };
    let common = content(f).gcd(&content(g));
    let f: IPoly = f.iter().map(|(m, c)| (m.clone(), c / &common)).collect();
    let g: IPoly = g.iter().map(|(m, c)| (m.clone(), c / &common)).collect();
    let (fn_, gn) = (norm(&f), norm(&g));
    let b: BigInt = 2 * fn_.clone().min(gn.clone()) + 29;
    let lo = b.clone().min(b.sqrt() * 99);
    let hi: BigInt = 2 * (&fn_ / lex_lc(&f, vars).abs()).min(&gn / lex_lc(&g, vars).abs()) + 2;
    let mut xi = lo.max(hi);
    for _ in 0..ATTEMPTS {
        let ff = eval_at(&f, x, &xi);
        let gg = eval_at(&g, x, &xi);
        if !ff.is_empty() && !gg.is_empty() {
            let img = heu(&ff, &gg, rest)?;
            let cand = interpolate(img, x, &xi);
            if !cand.is_empty() {
                let c = content(&cand);
                let cand: IPoly = cand.into_iter().map(|(m, v)| (m, v / &c)).collect();
                if divides(&cand, &f) && divides(&cand, &g) {
                    return Some(cand.into_iter().map(|(m, v)| (m, v * &common)).collect());
                }
            }
        }
        xi = xi.clone() * 73794 * xi.sqrt().sqrt() / 27011;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_ratfunc;

    fn p(s: &str) -> Poly {
        parse_ratfunc(s).unwrap().numer().clone()
    }

    #[test]
    fn finds_common_factor() {
        let a = p("(s*u - 2)*(s^2 + u + 3)");
        let b = p("(s*u - 2)*(u^2 - s)");
        let g = heu_gcd(&a, &b).unwrap();
        assert_eq!(g.normalize_unit(), p("s*u - 2").normalize_unit());
    }

    #[test]
    fn coprime_and_univariate() {
        assert!(heu_gcd(&p("u^8*v^3 + 1/2*u^6 + 1/2*u^3*v^3 - v^6"), &p("2*u^6*v^4 - 2*u^6 + 2*u^5*v + 6*u^3*v^3 - 4*v^6"))
            .unwrap()
            .is_constant());
        let g = heu_gcd(&p("6*s^2 - 6"), &p("4*s^2 + 8*s + 4")).unwrap();
        assert_eq!(g.normalize_unit(), p("s + 1"));
    }
}
