//! Finite free graded algebras over the coefficient ring, maps between
//! them, presentations, integer linear algebra and JSON exchange.

mod element;
mod graded;
pub mod json;
pub mod linalg;
mod map;
mod presentation;
mod solve;

pub use element::Element;
pub use graded::{tensor_product, BasisElement, GradedFreeAlgebra};
pub use map::{check_projection_formula, AlgebraMap, MapKind};
pub use presentation::Presentation;
pub use solve::GradedSolver;

use thiserror::Error;

use crate::fgl::FglError;
use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid algebra data: {0}")]
    Invalid(String),
    #[error("grading violated: {0}")]
    Grading(String),
    #[error("theories differ: {0} vs {1}")]
    TheoryMismatch(String, String),
    #[error("unknown class '{0}'")]
    UnknownName(String),
    #[error("not a ring homomorphism: {0}")]
    NotRingHom(String),
    #[error("projection formula fails: {0}")]
    ProjectionFormula(String),
    #[error("associativity fails: {0}")]
    Associativity(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Fgl(#[from] FglError),
}
