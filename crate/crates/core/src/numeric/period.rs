use num_complex::Complex64;
use serde::Serialize;

use super::paths::BranchPath;
use super::quad::{QuadConfig, QuadValue};
use super::scene::{NumericScene, PeriodSide};
use super::NumericError;

const ARC_SAMPLES: usize = 32;
const CIRCLE_SAMPLES: usize = 16;

/// Radius of the small circles of the compact cycles, relative to the smallest gap.
pub const CIRCLE_FRACTION: f64 = 1.0 / 32.0;

/// A linear combination of branch paths.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub terms: Vec<(Complex64, BranchPath)>,
}

impl Chain {
    pub fn integrate(&self, e: &[Complex64], punctures: &[Complex64], quad: &QuadConfig) -> Result<QuadValue, NumericError> {
        let mut acc = QuadValue::default();
        for (c, path) in &self.terms {
            acc = acc + path.integrate(e, punctures, quad)?.scale(*c);
        }
        Ok(acc)
    }

    pub fn paths(&self) -> impl Iterator<Item = &BranchPath> {
        self.terms.iter().map(|(_, p)| p)
    }

    pub fn paths_mut(&mut self) -> impl Iterator<Item = &mut BranchPath> {
        self.terms.iter_mut().map(|(_, p)| p)
    }
}

/// Period integrals with per-component error estimates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodVector {
    #[serde(serialize_with = "super::ser_complex_vec")]
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
}

pub fn scene_punctures(scene: &NumericScene) -> Vec<Complex64> {
    scene.points().iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// The cycles ℓ_0..ℓ_m (lf) or γ_0..γ_m (fin) as chains of paths at the base point.
pub fn period_chains(scene: &NumericScene, side: PeriodSide) -> Result<Vec<Chain>, NumericError> {
    let m = scene.m();
    let al = scene.params().alignment();
    let punctures = scene_punctures(scene);
    let last = al.i(m + 1);
    let mut chains = Vec::with_capacity(m + 1);
    match side {
        PeriodSide::Lf => {
            for k in 0..=m {
                let ik = al.i(k);
                let arc = BranchPath::arc(punctures[last], Some(last), punctures[ik], Some(ik), ARC_SAMPLES, &punctures)?;
                chains.push(Chain {
                    terms: vec![(Complex64::new(1.0, 0.0), arc)],
                });
            }
        }
        PeriodSide::Fin => {
            let eps = CIRCLE_FRACTION * scene.min_gap();
            let lift = Complex64::new(0.0, eps);
            let one = Complex64::new(1.0, 0.0);
            let last_coef = 1.0 / scene.lambda(last) - one;
            for k in 0..=m {
                let ik = al.i(k);
                let mut terms = Vec::with_capacity(3);
                if !scene.params().is_integral(ik) {
                    let c = 1.0 / scene.lambda(ik) - one;
                    let arc = BranchPath::arc(punctures[last] + lift, None, punctures[ik] + lift, None, ARC_SAMPLES, &punctures)?;
                    terms.push((c, arc));
                    terms.push((c / last_coef, BranchPath::circle(last, eps, CIRCLE_SAMPLES, &punctures)?));
                }
                terms.push((-one, BranchPath::circle(ik, eps, CIRCLE_SAMPLES, &punctures)?));
                chains.push(Chain { terms });
            }
        }
    }
    Ok(chains)
}

pub fn integrate_chains(chains: &[Chain], e: &[Complex64], punctures: &[Complex64], quad: &QuadConfig) -> Result<PeriodVector, NumericError> {
    let parts: Vec<Result<QuadValue, NumericError>> = std::thread::scope(|s| {
        let handles: Vec<_> = chains.iter().map(|c| s.spawn(move || c.integrate(e, punctures, quad))).collect();
        handles.into_iter().map(|h| h.join().expect("quadrature thread")).collect()
    });
    let mut values = Vec::with_capacity(chains.len());
    let mut errors = Vec::with_capacity(chains.len());
    for p in parts {
        let q = p?;
        values.push(q.value);
        errors.push(q.error);
    }
    Ok(PeriodVector { values, errors })
}

/// Integrals of u·dt/(t−1) over ℓ_k (lf, shift hat) or of u^{-1}·dt/(t−1)
/// over γ_k (fin, shift check), k = 0..m.
pub fn period_vector(scene: &NumericScene, side: PeriodSide) -> Result<PeriodVector, NumericError> {
    let e = scene.exponents(side)?;
    let chains = period_chains(scene, side)?;
    integrate_chains(&chains, &e, &scene_punctures(scene), &scene.quad)
}
