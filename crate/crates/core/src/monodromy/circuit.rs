use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exactfield::{RatFunc, RatMatrix};
use crate::homology::{HomologyBasis, ParameterSystem};

use super::{Generator, MonodromyError, Word};

/// Which representation a word is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Acts on ℓ-coordinate rows from the right.
    M,
    /// Acts on γ-coordinate columns from the left.
    N,
}

/// M_pq, N_pq and the vectors v, w they are built from.
#[derive(Clone, Debug)]
pub struct CircuitPair {
    pub generator: Generator,
    pub m: RatMatrix,
    pub n: RatMatrix,
    pub v: RatMatrix,
    pub w: RatMatrix,
}

impl CircuitPair {
    pub fn matrix(&self, side: Side) -> &RatMatrix {
        match side {
            Side::M => &self.m,
            Side::N => &self.n,
        }
    }
}

/// v = e_{ι(q)} − e_{ι(p)},  w = (λ_p^{-1} − 1) e*_{ι(q)} − (λ_q^{-1} − 1) e*_{ι(p)}.
pub fn generator_vectors(ps: &ParameterSystem, basis: &HomologyBasis, g: Generator) -> (RatMatrix, RatMatrix) {
    let al = ps.alignment();
    let (ip, iq) = (al.iota(g.p), al.iota(g.q));
    let v = basis.e_row[iq].sub(&basis.e_row[ip]).expect("same shape");
    let one = RatFunc::one();
    let cp = ps.lambda_rf(g.p).inv().expect("monomial").sub(&one);
    let cq = ps.lambda_rf(g.q).inv().expect("monomial").sub(&one);
    let w = basis.e_col[iq]
        .scale(&cp)
        .sub(&basis.e_col[ip].scale(&cq))
        .expect("same shape");
    (v, w)
}

/// M = I − λ_pλ_q·H·w·v and N = I + w·v·H.
pub fn circuit_matrices(ps: &ParameterSystem, basis: &HomologyBasis, g: Generator) -> CircuitPair {
    let (v, w) = generator_vectors(ps, basis, g);
    let n = ps.dim();
    let id = RatMatrix::identity(n);
    let c = ps.lambda_rf(g.p).mul(&ps.lambda_rf(g.q));
    let wv = w.mul(&v).expect("column times row");
    let m_mat = id.sub(&basis.h.mul(&wv).expect("square").scale(&c)).expect("square");
    let n_mat = id.add(&wv.mul(&basis.h).expect("square")).expect("square");
    CircuitPair {
        generator: g,
        m: m_mat,
        n: n_mat,
        v,
        w,
    }
}

struct Entry {
    pair: CircuitPair,
    inv_m: OnceLock<RatMatrix>,
    inv_n: OnceLock<RatMatrix>,
}

/// The circuit matrices of one parameter system, with lazily cached inverses.
pub struct Representation {
    ps: ParameterSystem,
    basis: HomologyBasis,
    entries: BTreeMap<Generator, Entry>,
}

impl Representation {
    pub fn new(ps: &ParameterSystem) -> Result<Self, MonodromyError> {
        let basis = HomologyBasis::new(ps)?;
        let entries = Generator::all(ps.m())
            .into_iter()
            .map(|g| {
                let pair = circuit_matrices(ps, &basis, g);
                (
                    g,
                    Entry {
                        pair,
                        inv_m: OnceLock::new(),
                        inv_n: OnceLock::new(),
                    },
                )
            })
            .collect();
        Ok(Representation {
            ps: ps.clone(),
            basis,
            entries,
        })
    }

    pub fn params(&self) -> &ParameterSystem {
        &self.ps
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    pub fn h(&self) -> &RatMatrix {
        &self.basis.h
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.entries.keys().copied()
    }

    pub fn pair(&self, g: Generator) -> &CircuitPair {
        &self.entries[&g].pair
    }

    pub fn pairs(&self) -> impl Iterator<Item = &CircuitPair> {
        self.entries.values().map(|e| &e.pair)
    }

    /// λ_pλ_q
    pub fn eigenvalue(&self, g: Generator) -> RatFunc {
        self.ps.lambda_rf(g.p).mul(&self.ps.lambda_rf(g.q))
    }

    /// The inverse of M_g or N_g, computed by elimination once and cached.
    pub fn inverse(&self, g: Generator, side: Side) -> Result<&RatMatrix, MonodromyError> {
        let e = &self.entries[&g];
        let cell = match side {
            Side::M => &e.inv_m,
            Side::N => &e.inv_n,
        };
        if let Some(m) = cell.get() {
            return Ok(m);
        }
        let inv = e.pair.matrix(side).inverse()?;
        Ok(cell.get_or_init(|| inv))
    }

    /// Matrix of a word. Side M composes as M(w₁w₂) = M(w₁)·M(w₂); side N
    /// composes in the opposite order, N(w₁w₂) = N(w₂)·N(w₁), so that
    /// M(w)·H·N(w) = H for every word.
    pub fn word_matrix(&self, word: &Word, side: Side) -> Result<RatMatrix, MonodromyError> {
        let mut acc = RatMatrix::identity(self.ps.dim());
        for &(g, e) in &word.letters {
            if !self.entries.contains_key(&g) {
                return Err(MonodromyError::BadGenerator {
                    p: g.p,
                    q: g.q,
                    m: self.ps.m(),
                });
            }
            let f = if e > 0 { self.pair(g).matrix(side) } else { self.inverse(g, side)? };
            acc = match side {
                Side::M => acc.mul(f)?,
                Side::N => f.mul(&acc)?,
            };
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rf;
    use crate::monodromy::section7::section7_system;

    #[test]
    fn section7_vectors() {
        let ps = section7_system();
        let basis = HomologyBasis::new(&ps).unwrap();
        let (v, w) = generator_vectors(&ps, &basis, Generator { p: 0, q: 1 });
        assert!(w.is_zero());
        assert_eq!(v.to_rows(), vec![vec![rf("-1"), rf("1"), rf("0"), rf("0")]]);
        let (v, w) = generator_vectors(&ps, &basis, Generator { p: 2, q: 3 });
        assert_eq!(v.to_rows(), vec![vec![rf("0"), rf("0"), rf("-1"), rf("1")]]);
        assert_eq!(w.transpose().to_rows(), vec![vec![rf("0"), rf("0"), rf("1 - s"), rf("s^-1 - 1")]]);
        let (v, _) = generator_vectors(&ps, &basis, Generator { p: 2, q: 4 });
        assert_eq!(v.to_rows(), vec![vec![rf("0"), rf("0"), rf("-1"), rf("0")]]);
    }

    #[test]
    fn words() {
        let rep = Representation::new(&section7_system()).unwrap();
        let g = Generator { p: 1, q: 2 };
        for side in [Side::M, Side::N] {
            assert!(rep.word_matrix(&Word::empty(), side).unwrap().is_identity());
            let w = Word::letter(g).concat(&Word::letter(g).inverse());
            assert!(rep.word_matrix(&w, side).unwrap().is_identity());
        }
        let a = Generator { p: 0, q: 2 };
        let b = Generator { p: 1, q: 3 };
        let comm = Word::parse("02,13,02^-1,13^-1", 3).unwrap();
        let direct = rep.word_matrix(&comm, Side::M).unwrap();
        let ma = &rep.pair(a).m;
        let mb = &rep.pair(b).m;
        let ma_i = ma.inverse().unwrap();
        let mb_i = mb.inverse().unwrap();
        let reassoc = ma.mul(&mb.mul(&ma_i.mul(&mb_i).unwrap()).unwrap()).unwrap();
        assert_eq!(direct, reassoc);
    }
}
