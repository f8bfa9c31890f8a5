use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactfield::{Monomial, Symbol};

use super::{AlphaEntry, ParameterSystem};

/// Shape of a random parameter system.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub m: usize,
    pub r: usize,
    pub symbols: Vec<String>,
    pub max_exponent: i32,
}

impl RandomSpec {
    pub fn new(m: usize, r: usize) -> Self {
        RandomSpec {
            m,
            r,
            symbols: vec!["s".into(), "u".into(), "v".into()],
            max_exponent: 2,
        }
    }

    /// m in 2..=6, r in 0..=m, three symbols.
    pub fn sample<R: Rng>(rng: &mut R) -> Self {
        let m = rng.gen_range(2..=6);
        let r = rng.gen_range(0..=m);
        RandomSpec::new(m, r)
    }
}

fn random_monomial<R: Rng>(rng: &mut R, spec: &RandomSpec) -> Monomial {
    loop {
        let mono = Monomial::from_pairs(
            spec.symbols
                .iter()
                .map(|s| (Symbol::new(s), rng.gen_range(-spec.max_exponent..=spec.max_exponent))),
        );
        if !mono.is_one() {
            return mono;
        }
    }
}

/// Draws a validated system: r integral entries at random positions, the
/// others random Laurent monomials, the last of which closes the product to 1.
pub fn random_system<R: Rng>(rng: &mut R, spec: &RandomSpec) -> ParameterSystem {
    assert!(spec.r <= spec.m + 1, "need at least two non-integral entries");
    let n = spec.m + 3;
    loop {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let integral = &idx[..spec.r];
        let mut alphas: Vec<Option<AlphaEntry>> = vec![None; n];
        for &i in integral {
            alphas[i] = Some(AlphaEntry::Integral(rng.gen_range(-2..=2)));
        }
        let non: Vec<usize> = (0..n).filter(|i| alphas[*i].is_none()).collect();
        let mut product = Monomial::one();
        for &i in &non[..non.len() - 1] {
            let mono = random_monomial(rng, spec);
            product = product.mul(&mono);
            alphas[i] = Some(AlphaEntry::symbolic(mono));
        }
        let closing = product.inv();
        if closing.is_one() {
            continue;
        }
        alphas[*non.last().unwrap()] = Some(AlphaEntry::symbolic(closing));
        let alphas = alphas.into_iter().map(Option::unwrap).collect();
        return ParameterSystem::new(spec.m, alphas).expect("random system satisfies the invariants");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn systems_have_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let spec = RandomSpec::sample(&mut rng);
            let ps = random_system(&mut rng, &spec);
            assert_eq!(ps.m(), spec.m);
            assert_eq!(ps.r(), spec.r);
        }
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        let a = random_system(&mut ChaCha8Rng::seed_from_u64(9), &RandomSpec::new(4, 2));
        let b = random_system(&mut ChaCha8Rng::seed_from_u64(9), &RandomSpec::new(4, 2));
        assert_eq!(a, b);
    }
}
