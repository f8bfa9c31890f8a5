//! Exact arithmetic in Q(λ) and dense matrices over it.

mod heugcd;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use matrix::{RatMatrix, Solution};
pub use monomial::{Monomial, Symbol};
pub use parse::{parse_monomial, parse_ratfunc};
pub use poly::{Coeff, Poly};
pub use ratfunc::{ratfunc_arith, ratfunc_eq, ArithOp, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("binary operation is missing its second operand")]
    MissingOperand,
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("system has no solution (rank {rank})")]
    SingularSystem { rank: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Shorthand for a rational function parsed from a literal; panics on bad input.
pub fn rf(text: &str) -> RatFunc {
    parse_ratfunc(text).unwrap_or_else(|e| panic!("bad literal `{text}`: {e}"))
}
