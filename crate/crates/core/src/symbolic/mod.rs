//! Exact graded multivariate polynomials over the integers.
//!
//! Coefficients are arbitrary precision. Lazard generators `a_ij` are
//! canonicalized to `i <= j`; geometric variables carry positive degree.

mod parse;
mod poly;
mod symmetric;
mod variable;

pub use parse::{parse_poly, VarContext};
pub(crate) use parse::{tokenize, Cursor, Token};
pub use poly::{CoefficientPoly, Monomial};
pub use symmetric::{elementary, expand_elementary, is_symmetric, symmetric_reduce};
pub use variable::Variable;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("variable '{0}' used with two different degrees")]
    Context(String),
    #[error("image {image} of {variable} is not homogeneous of degree {expected}")]
    Grading {
        variable: String,
        expected: i32,
        image: String,
    },
    #[error("polynomial is not symmetric in the given roots")]
    NotSymmetric,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown name '{name}' at offset {pos}")]
    UnknownName { pos: usize, name: String },
}

/// Drops every term whose exponent sum in `geometric` exceeds `bound`.
pub fn truncate_at_degree(p: &CoefficientPoly, geometric: &[Variable], bound: u32) -> CoefficientPoly {
    p.truncate(geometric, bound)
}
