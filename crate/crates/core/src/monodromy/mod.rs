//! Circuit matrices of the loops ρ_pq and the identities they satisfy.

mod checks;
mod circuit;
mod generator;
mod section7;
mod suite;

use thiserror::Error;

use crate::exactfield::FieldError;
use crate::homology::HomologyError;

pub use checks::{
    invariant_block_report, orthogonality_check, reflection_equiv, verify_basis, verify_degenerate,
    verify_determinants, verify_eigen, verify_h_conjugation, verify_words,
};
pub use circuit::{circuit_matrices, generator_vectors, CircuitPair, Representation, Side};
pub use generator::{Generator, Word};
pub use section7::{section7_golden, section7_report, section7_system};
pub use suite::{run_suite, MatricesJson, Suite};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonodromyError {
    #[error("({p},{q}) is not a generator for m = {m}")]
    BadGenerator { p: usize, q: usize, m: usize },
    #[error("lambda_{p} * lambda_{q} = 1: the reflection form does not apply")]
    HypothesisViolated { p: usize, q: usize },
    #[error("bad word: {0}")]
    WordSyntax(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
