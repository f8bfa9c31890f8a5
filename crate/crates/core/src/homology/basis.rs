use crate::exactfield::{RatFunc, RatMatrix};
use crate::report::Check;

use super::{HomologyError, ParameterSystem};

/// H together with the coordinate rows e_0..e_{m+2} of ℓ_k and the columns
/// e*_0..e*_{m+2} of γ_k.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub h: RatMatrix,
    pub e_row: Vec<RatMatrix>,
    pub e_col: Vec<RatMatrix>,
}

impl HomologyBasis {
    pub fn new(ps: &ParameterSystem) -> Result<Self, HomologyError> {
        let n = ps.dim();
        let h = intersection_matrix(ps);
        let (e_last, e_last_star) = boundary_vectors(ps)?;
        let mut e_row: Vec<RatMatrix> = (0..n)
            .map(|k| RatMatrix::row_vector((0..n).map(|j| if j == k { RatFunc::one() } else { RatFunc::zero() }).collect()))
            .collect();
        e_row.push(RatMatrix::zeros(1, n));
        e_row.push(e_last);
        let mut e_col: Vec<RatMatrix> = e_row[..=n].iter().map(RatMatrix::transpose).collect();
        e_col.push(e_last_star);
        Ok(HomologyBasis { h, e_row, e_col })
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// x · H · y for a row x and a column y.
    pub fn pairing(&self, x: &RatMatrix, y: &RatMatrix) -> RatFunc {
        x.mul(&self.h).and_then(|xh| xh.mul(y)).expect("shapes agree").get(0, 0).clone()
    }
}

/// H = I + (λ_{i_{m+1}} − 1)^{-1} · L · D.
pub fn intersection_matrix(ps: &ParameterSystem) -> RatMatrix {
    let n = ps.dim();
    let r = ps.r();
    let lam_last = ps.lambda_at(n);
    let scale = lam_last.sub(&RatFunc::one()).inv().expect("lambda_{i_{m+1}} is nontrivial");
    let d: Vec<RatFunc> = (0..n)
        .map(|k| {
            if k < r {
                RatFunc::zero()
            } else {
                let l = ps.lambda_at(k);
                l.sub(&RatFunc::one()).div(&l).expect("monomials are nonzero")
            }
        })
        .collect();
    RatMatrix::from_fn(n, n, |j, k| {
        let l = if k >= j { RatFunc::one() } else { lam_last.clone() };
        let off = l.mul(&d[k]).mul(&scale);
        if j == k { off.add(&RatFunc::one()) } else { off }
    })
}

/// The row e_{m+2} and column e*_{m+2} expressing ℓ_{m+2}, γ_{m+2} in the bases.
///
/// e*_{m+2} = −λ_{i_{m+1}}·(λ_{i_0}···λ_{i_m}, λ_{i_1}···λ_{i_m}, …, λ_{i_m})ᵀ, so that
/// ⟨ℓ_k, γ_{m+2}⟩ = (λ_{i_{m+2}}^{-1} − 1)/(λ_{i_{m+1}}^{-1} − 1) for every k.
pub fn boundary_vectors(ps: &ParameterSystem) -> Result<(RatMatrix, RatMatrix), HomologyError> {
    let n = ps.dim();
    let idx = ps.alignment().i(n + 1);
    let lam_top = ps.lambda_rf(idx);
    if lam_top.is_one() {
        return Err(HomologyError::DegenerateExtension { index: idx });
    }
    let one = RatFunc::one();
    let coef = lam_top.neg().div(&lam_top.sub(&one))?;
    let mut prefix = RatFunc::one();
    let mut row = Vec::with_capacity(n);
    for k in 0..n {
        let l = ps.lambda_at(k);
        row.push(coef.mul(&prefix).mul(&l.sub(&one)));
        prefix = prefix.mul(&l);
    }
    let mut col = vec![RatFunc::zero(); n];
    let mut suffix = ps.lambda_at(n).neg();
    for k in (0..n).rev() {
        suffix = suffix.mul(&ps.lambda_at(k));
        col[k] = suffix.clone();
    }
    Ok((RatMatrix::row_vector(row), RatMatrix::col_vector(col)))
}

/// (1 − λ_{i_{m+2}}) / (1 − λ_{i_{m+1}}^{-1})
pub fn h_det_closed_form(ps: &ParameterSystem) -> RatFunc {
    let n = ps.dim();
    let one = RatFunc::one();
    let top = ps.lambda_at(n + 1);
    let last = ps.lambda_at(n);
    one.sub(&top)
        .div(&one.sub(&last.inv().expect("monomial")))
        .expect("lambda_{i_{m+1}} is nontrivial")
}

/// 1 + (λ_{i_{m+2}} − 1) / ((λ_{i_{m+1}} − 1) λ_{i_{m+2}})
pub fn pairing_closed_form(ps: &ParameterSystem) -> RatFunc {
    let n = ps.dim();
    let one = RatFunc::one();
    let top = ps.lambda_at(n + 1);
    let last = ps.lambda_at(n);
    one.add(&top.sub(&one).div(&last.sub(&one).mul(&top)).expect("nontrivial lambdas"))
}

/// Compares det H with its closed form and checks that it is nonzero.
pub fn h_det_check(ps: &ParameterSystem) -> Check {
    let h = intersection_matrix(ps);
    let det = h.det().expect("H is square");
    let closed = h_det_closed_form(ps);
    Check::from_bool("det H", det == closed && !det.is_zero(), || format!("det H = {det}, expected {closed}"))
}
