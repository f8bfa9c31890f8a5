//! Fixtures shared by the benchmarks.

use fdmono_core::homology::{random_system, RandomSpec};
use fdmono_core::numeric::{AlphaValue, NumericScene, Shift};
use fdmono_core::ParameterSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible random system with the given m and r.
pub fn random_params(m: usize, r: usize, seed: u64) -> ParameterSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = RandomSpec::new(m, r);
    random_system(&mut rng, &spec)
}

/// The m = 2 scene with all exponents non-integral.
pub fn generic_scene(shift: Shift) -> NumericScene {
    let alphas: Vec<AlphaValue> = [-0.7, -0.3, -0.4, 0.6, 0.8].iter().map(|&v| AlphaValue::Real(v)).collect();
    NumericScene::new(&alphas, &[0.3, 0.6], shift).expect("valid scene")
}
