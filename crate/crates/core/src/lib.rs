//! Algebraic cobordism rings of blowups, projective bundles and moduli of
//! pointed rational curves, computed with exact integer arithmetic.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod fgl;
pub mod symbolic;
