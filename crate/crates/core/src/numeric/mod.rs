//! Floating-point checks: the F_D series, its Euler integral, period
//! integrals over the twisted cycles and their continuation along loops.

mod continuation;
mod euler;
mod paths;
mod period;
mod quad;
mod scene;
mod series;
pub mod special;

use num_complex::Complex64;
use serde::Serializer;
use thiserror::Error;

use crate::homology::HomologyError;
use crate::monodromy::MonodromyError;

pub use continuation::{
    continue_loop, loop_closure_residual, verify_monodromy_numeric, ContinuationState, LoopSchedule, LoopStats, MonodromyOptions, Track,
};
pub use euler::{euler_integral, euler_integral_check, euler_integral_check_with, EulerComparison};
pub use paths::{clearance, BranchPath, Vertex};
pub use period::{integrate_chains, period_chains, period_vector, scene_punctures, Chain, PeriodVector, CIRCLE_FRACTION};
pub use quad::{gauss_adaptive, tanh_sinh_log, QuadConfig, QuadValue, TsNode};
pub use scene::{norm, relative_residual, AlphaValue, CMatrix, LoopConfig, NumericScene, PeriodSide, SceneConfig, Shift};
pub use series::{fd_series, SeriesValue};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("endpoint divergence: {0}")]
    EndpointDivergence(String),
    #[error("clearance lost: {0}")]
    ClearanceLost(String),
    #[error("branch jump: {0}")]
    BranchJump(String),
    #[error("bad scene: {0}")]
    BadScene(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
}

pub(crate) fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq([z.re, z.im])
}

pub(crate) fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}
