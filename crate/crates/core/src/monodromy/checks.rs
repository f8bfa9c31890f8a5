use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{RatFunc, RatMatrix};
use crate::homology::{h_det_check, pairing_closed_form};
use crate::report::{Check, VerificationReport};

use super::{Generator, MonodromyError, Representation, Side, Word};

fn small_int_vector<R: Rng>(rng: &mut R, n: usize, row: bool) -> RatMatrix {
    let v: Vec<RatFunc> = (0..n).map(|_| RatFunc::from_int(rng.gen_range(-3..=3))).collect();
    if row {
        RatMatrix::row_vector(v)
    } else {
        RatMatrix::col_vector(v)
    }
}

fn pair_form(x: &RatMatrix, h: &RatMatrix, y: &RatMatrix) -> RatFunc {
    x.mul(h).and_then(|a| a.mul(y)).expect("conformable").get(0, 0).clone()
}

/// M·H·N = H for every generator, plus the transported pairing
/// (x·M)·H·(N·y) = x·H·y on seeded random coordinate vectors.
pub fn verify_h_conjugation(rep: &Representation, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let h = rep.h();
    let n = h.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for pair in rep.pairs() {
        let g = pair.generator;
        let mhn = pair.m.mul(h).and_then(|a| a.mul(&pair.n)).expect("square");
        report.push(Check::from_bool(format!("M{g} H N{g} = H"), mhn == *h, || {
            format!("residual {:?}", mhn.sub(h).unwrap())
        }));
        let mut ok = true;
        let mut witness = String::new();
        for _ in 0..3 {
            let x = small_int_vector(&mut rng, n, true);
            let y = small_int_vector(&mut rng, n, false);
            let lhs = pair_form(&x.mul(&pair.m).unwrap(), h, &pair.n.mul(&y).unwrap());
            let rhs = pair_form(&x, h, &y);
            if lhs != rhs {
                ok = false;
                witness = format!("x = {x:?}, y = {y:?}: {lhs} vs {rhs}");
                break;
            }
        }
        report.push(Check::from_bool(format!("pairing invariant under {g}"), ok, || witness));
    }
    report
}

/// det M = λ_pλ_q and det N = (λ_pλ_q)^{-1}.
pub fn verify_determinants(rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::new();
    for pair in rep.pairs() {
        let g = pair.generator;
        let c = rep.eigenvalue(g);
        let dm = pair.m.det().expect("square");
        let dn = pair.n.det().expect("square");
        let ci = c.inv().expect("monomial");
        report.push(Check::from_bool(format!("det M{g}"), dm == c, || format!("{dm} vs {c}")));
        report.push(Check::from_bool(format!("det N{g}"), dn == ci, || format!("{dn} vs {ci}")));
    }
    report
}

/// M = N = I whenever α_p and α_q are both integral.
pub fn verify_degenerate(rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ps = rep.params();
    for pair in rep.pairs() {
        let g = pair.generator;
        if ps.is_integral(g.p) && ps.is_integral(g.q) {
            report.push(Check::from_bool(
                format!("{g} both integral gives identity"),
                pair.m.is_identity() && pair.n.is_identity(),
                || format!("M = {:?}, N = {:?}", pair.m, pair.n),
            ));
        }
    }
    report
}

/// det H and the extended-cycle pairing against their closed forms.
pub fn verify_basis(rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ps = rep.params();
    report.push(h_det_check(ps));
    let b = rep.basis();
    let n = ps.dim();
    let got = b.pairing(&b.e_row[n + 1], &b.e_col[n + 1]);
    let want = pairing_closed_form(ps);
    report.push(Check::from_bool("extended-cycle pairing", got == want, || format!("{got} vs {want}")));
    let r = ps.r();
    let hm = b.h.sub(&RatMatrix::identity(n)).unwrap();
    let zero_cols = (0..r).all(|k| (0..n).all(|j| hm.get(j, k).is_zero()));
    report.push(Check::from_bool("H - I vanishes on integral columns", zero_cols, || format!("{hm:?}")));
    report
}

/// Word evaluation is compatible with concatenation and preserves H.
pub fn verify_words(rep: &Representation, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let gens: Vec<Generator> = rep.generators().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut random_word = |len: usize| Word {
        letters: (0..len)
            .map(|_| (gens[rng.gen_range(0..gens.len())], if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    };
    let (w1, w2) = (random_word(2), random_word(2));
    let w12 = w1.concat(&w2);
    let ev = |w: &Word, s: Side| rep.word_matrix(w, s).expect("word evaluation");
    let (m1, m2, m12) = (ev(&w1, Side::M), ev(&w2, Side::M), ev(&w12, Side::M));
    let (n1, n2, n12) = (ev(&w1, Side::N), ev(&w2, Side::N), ev(&w12, Side::N));
    report.push(Check::from_bool(
        format!("M({w12}) = M({w1}) M({w2})"),
        m12 == m1.mul(&m2).unwrap(),
        || "product mismatch".into(),
    ));
    report.push(Check::from_bool(
        format!("N({w12}) = N({w2}) N({w1})"),
        n12 == n2.mul(&n1).unwrap(),
        || "product mismatch".into(),
    ));
    let h = rep.h();
    report.push(Check::from_bool(
        format!("M({w12}) H N({w12}) = H"),
        m12.mul(h).unwrap().mul(&n12).unwrap() == *h,
        || "H not preserved".into(),
    ));
    report
}

/// v·M = c·v, N·w = c^{-1}·w and v·H·w = (1 − c)/c for c = λ_pλ_q.
pub fn verify_eigen(rep: &Representation, g: Generator) -> VerificationReport {
    let mut report = VerificationReport::new();
    let pair = rep.pair(g);
    let c = rep.eigenvalue(g);
    let ci = c.inv().expect("monomial");
    if !pair.v.is_zero() {
        let vm = pair.v.mul(&pair.m).unwrap();
        let cv = pair.v.scale(&c);
        report.push(Check::from_bool(format!("v M{g} = c v"), vm == cv, || format!("v = {:?}, vM = {vm:?}", pair.v)));
    }
    if !pair.w.is_zero() {
        let nw = pair.n.mul(&pair.w).unwrap();
        let cw = pair.w.scale(&ci);
        report.push(Check::from_bool(format!("N{g} w = w / c"), nw == cw, || format!("w = {:?}, Nw = {nw:?}", pair.w)));
    }
    if !c.is_one() {
        let got = pair_form(&pair.v, rep.h(), &pair.w);
        let want = RatFunc::one().sub(&c).div(&c).unwrap();
        report.push(Check::from_bool(format!("v H w for {g}"), got == want, || format!("{got} vs {want}")));
    }
    if report.checks.is_empty() {
        report.push(Check::pass(format!("eigen {g}")).with_note("v = 0, w = 0 and c = 1: nothing asserted"));
    }
    report
}

/// Rebuilds M and N from the reflection formulas and compares.
pub fn reflection_equiv(rep: &Representation, g: Generator) -> Result<VerificationReport, MonodromyError> {
    let c = rep.eigenvalue(g);
    if c.is_one() {
        return Err(MonodromyError::HypothesisViolated { p: g.p, q: g.q });
    }
    let mut report = VerificationReport::new();
    let pair = rep.pair(g);
    let h = rep.h();
    let vhw = pair_form(&pair.v, h, &pair.w);
    if vhw.is_zero() {
        report.push(Check::fail(format!("reflection {g}"), "v H w vanishes although c != 1"));
        return Ok(report);
    }
    let one = RatFunc::one();
    let id = RatMatrix::identity(h.rows());
    let wv = pair.w.mul(&pair.v).unwrap();
    let km = one.sub(&c).div(&vhw).unwrap();
    let kn = one.sub(&c.inv().unwrap()).div(&vhw).unwrap();
    let m_ref = id.sub(&h.mul(&wv).unwrap().scale(&km)).unwrap();
    let n_ref = id.sub(&wv.mul(h).unwrap().scale(&kn)).unwrap();
    report.push(Check::from_bool(format!("reflection form = M{g}"), m_ref == pair.m, || {
        format!("{:?}", m_ref.sub(&pair.m).unwrap())
    }));
    report.push(Check::from_bool(format!("reflection form = N{g}"), n_ref == pair.n, || {
        format!("{:?}", n_ref.sub(&pair.n).unwrap())
    }));
    Ok(report)
}

/// Pairings between eigenvectors whose eigenvalue product is not 1 vanish.
pub fn orthogonality_check(rep: &Representation, g: Generator) -> VerificationReport {
    let mut report = VerificationReport::new();
    let pair = rep.pair(g);
    let c = rep.eigenvalue(g);
    let h = rep.h();
    let n = h.rows();
    if c.is_one() {
        report.push(Check::pass(format!("orthogonality {g}")).with_note("c = 1: every eigenvalue product is 1"));
        return report;
    }
    let id = RatMatrix::identity(n);
    // 1-eigenrows of M: x (M − I) = 0.
    let rows_m: Vec<RatMatrix> = pair.m.sub(&id).unwrap().transpose().null_space().iter().map(RatMatrix::transpose).collect();
    // 1-eigencolumns of N.
    let cols_n = pair.n.sub(&id).unwrap().null_space();
    let mut bad = Vec::new();
    if !pair.w.is_zero() {
        for x in &rows_m {
            let val = pair_form(x, h, &pair.w);
            if !val.is_zero() {
                bad.push(format!("1-row {x:?} against w: {val}"));
            }
        }
    }
    if !pair.v.is_zero() {
        for y in &cols_n {
            let val = pair_form(&pair.v, h, y);
            if !val.is_zero() {
                bad.push(format!("v against 1-column {y:?}: {val}"));
            }
        }
    }
    report.push(Check::from_bool(format!("orthogonality {g}"), bad.is_empty(), || bad.join("; ")));
    report
}

/// Invariance of the span of γ_0..γ_{r−1} under N and of its
/// H-annihilator under M.
pub fn invariant_block_report(rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::new();
    let r = rep.params().r();
    if r == 0 {
        report.push(Check::pass("invariant blocks").with_note("r = 0: no proper invariant subspace asserted"));
        return report;
    }
    let h = rep.h();
    let n = h.rows();
    let h_left = RatMatrix::from_fn(n, r, |i, j| h.get(i, j).clone());
    let annihilator: Vec<RatMatrix> = h_left.transpose().null_space().iter().map(RatMatrix::transpose).collect();
    for pair in rep.pairs() {
        let g = pair.generator;
        let mut bad = Vec::new();
        for j in r..n {
            for k in 0..r {
                if !pair.n.get(j, k).is_zero() {
                    bad.push(format!("N[{j}][{k}] = {}", pair.n.get(j, k)));
                }
            }
        }
        report.push(Check::from_bool(format!("N{g} preserves circle span"), bad.is_empty(), || bad.join("; ")));
        let mut bad = Vec::new();
        for x in &annihilator {
            let xmh = x.mul(&pair.m).unwrap().mul(h).unwrap();
            if let Some(k) = (0..r).find(|&k| !xmh.get(0, k).is_zero()) {
                bad.push(format!("x = {x:?}: (xMH)[{k}] = {}", xmh.get(0, k)));
            }
        }
        report.push(Check::from_bool(format!("M{g} preserves annihilator"), bad.is_empty(), || bad.join("; ")));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_monomial;
    use crate::homology::{AlphaEntry, ParameterSystem};
    use crate::monodromy::section7::section7_system;

    fn gauss() -> Representation {
        let sym = |s: &str| AlphaEntry::symbolic(parse_monomial(s).unwrap());
        Representation::new(&ParameterSystem::new(1, vec![sym("a"), sym("b"), sym("c"), sym("a^-1*b^-1*c^-1")]).unwrap()).unwrap()
    }

    #[test]
    fn section7_identities() {
        let rep = Representation::new(&section7_system()).unwrap();
        assert!(verify_h_conjugation(&rep, 1).passed());
        assert!(verify_determinants(&rep).passed());
        assert!(verify_degenerate(&rep).passed());
        assert!(verify_basis(&rep).passed());
        assert!(verify_words(&rep, 4).passed());
        assert!(invariant_block_report(&rep).passed());
    }

    #[test]
    fn section7_eigen_examples() {
        let rep = Representation::new(&section7_system()).unwrap();
        let g23 = Generator { p: 2, q: 3 };
        let pair = rep.pair(g23);
        assert_eq!(pair.v.mul(&pair.m).unwrap(), pair.v);
        assert!(matches!(reflection_equiv(&rep, g23), Err(MonodromyError::HypothesisViolated { .. })));
        let g14 = Generator { p: 1, q: 4 };
        let pair = rep.pair(g14);
        assert_eq!(pair.v.mul(&pair.m).unwrap(), pair.v.scale(&RatFunc::var("u")));
        assert!(reflection_equiv(&rep, Generator { p: 0, q: 2 }).unwrap().passed());
        for g in Generator::all(3) {
            assert!(verify_eigen(&rep, g).passed(), "{g}");
            assert!(orthogonality_check(&rep, g).passed(), "{g}");
        }
    }

    #[test]
    fn gauss_case() {
        let rep = gauss();
        assert!(verify_h_conjugation(&rep, 2).passed());
        for g in Generator::all(1) {
            assert!(reflection_equiv(&rep, g).unwrap().passed());
            assert!(verify_eigen(&rep, g).passed());
            assert!(orthogonality_check(&rep, g).passed());
        }
        let r = invariant_block_report(&rep);
        assert!(r.passed());
        assert!(r.checks[0].witness.as_deref().unwrap().contains("no proper invariant subspace"));
    }
}
