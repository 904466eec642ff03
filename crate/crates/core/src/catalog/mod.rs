//! The worked spaces: projective spaces, del Pezzo surfaces, the blowups
//! of P^3 along the twisted cubic and of P^5 along the Veronese surface,
//! and the moduli spaces of stable pointed rational curves.

mod common;
mod cubic;
mod del_pezzo;
mod m0n;
mod m05;
mod veronese;

pub use common::{
    chern_quotient, law_for, pushforward_by_duality, tangent_total, theory_specialization,
};
pub use cubic::{
    blowup_twisted_cubic, count_secants, secant_class, twisted_cubic_presentation, TwistedCubic, TWISTED_CUBIC_RELATIONS,
};
pub use del_pezzo::{del_pezzo, p1xp1, projective, DelPezzo, DelPezzoBase};
pub use m05::{m05_change_of_basis, naive_obstruction, M05Iso, NaiveObstruction};
pub use m0n::{keel_fundamental_sum, m0n_ring, M0nRing, SubsetIndex, M0N_DEFAULT_MAX};
pub use veronese::{
    blowup_veronese, count_steiner, naive_steiner, pushforward_product, pushforward_table, steiner_class,
    veronese_presentation, Veronese,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::constructions::ConstructionError;
use crate::fgl::FglError;
use crate::symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{0}")]
    Range(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("no unit pivot in degree {0}")]
    NoUnitPivot(usize),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
