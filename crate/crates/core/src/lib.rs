//! Exact and numerical tools for the monodromy of Lauricella's F_D system
//! acting on twisted homology.

pub mod exactfield;
pub mod homology;
pub mod monodromy;
pub mod numeric;
pub mod report;

pub use exactfield::{FieldError, Monomial, RatFunc, RatMatrix, Symbol};
pub use homology::{Alignment, HomologyBasis, ParameterSystem};
pub use monodromy::{CircuitPair, Generator, Word};
pub use numeric::{NumericScene, PeriodSide, Shift};
pub use report::{Check, VerificationReport};
