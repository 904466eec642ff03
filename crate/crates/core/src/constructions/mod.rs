//! Builders for point rings, projective bundles and blowups.

mod blowup;
mod bundle;
mod surjective;

pub use blowup::{blowup_full, full_presentation, verify_blowup_axioms, BlowupData, BlowupReport, BlowupResult};
pub use bundle::{point_algebra, projective_bundle, projective_space, ProjectiveBundleResult};
pub use surjective::{blowup_surjective, SurjectiveBlowup};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::fgl::FglError;
use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bad input: {0}")]
    Input(String),
    #[error("self-intersection check failed: {0}")]
    SelfIntersection(String),
    #[error("reduction failed: {0}")]
    Reduction(String),
    #[error("i^* is not surjective in degrees {0:?}")]
    NotSurjective(Vec<i32>),
    #[error("bad lift: {0}")]
    BadLift(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
