//! Truncated formal group laws, their series, the invariant differential
//! and residue push-forwards.

mod law;
mod ops;
mod residue;

pub use law::{FormalGroupLaw, Specialization, Theory};
pub use ops::{f_add, f_sub, f_sum, formal_inverse, n_series, FormalRing, Truncated};
pub use residue::{
    chern_variable, residue_pushforward, residue_pushforward_split, residue_universal,
};

use thiserror::Error;

use crate::symbolic::{CoefficientPoly, SymbolicError, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FglError {
    #[error("unknown theory '{0}'")]
    UnknownTheory(String),
    #[error("coefficient a_({0},{1}) is outside the truncation")]
    CoefficientOutOfRange(u32, u32),
    #[error("coefficients of x^{0} y^{1} and x^{1} y^{0} differ")]
    Asymmetric(u32, u32),
    #[error("omega_{requested} needs a degree cap of at least {requested}, law has {cap}")]
    DegreeCap { requested: u32, cap: u32 },
    #[error("series length {0} is out of range")]
    SeriesTooLong(i64),
    #[error("bundle of rank zero")]
    ZeroRank,
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Coefficients of `omega(t) = 1 / (dF/dy)(t, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantDifferential {
    coefficients: Vec<CoefficientPoly>,
}

impl InvariantDifferential {
    /// `omega_r`, with `omega_0 = 1`.
    pub fn coefficient(&self, r: usize) -> &CoefficientPoly {
        &self.coefficients[r]
    }

    pub fn coefficients(&self) -> &[CoefficientPoly] {
        &self.coefficients
    }

    /// `sum omega_r t^r` in the variable `t`.
    pub fn as_series(&self, t: &Variable) -> CoefficientPoly {
        let mut out = CoefficientPoly::zero();
        for (r, c) in self.coefficients.iter().enumerate() {
            out += &c.mul_monomial(&crate::symbolic::Monomial::power(t.clone(), r as u32));
        }
        out
    }
}

/// `omega_0 .. omega_{r_max}`; needs `r_max <= degree_cap`.
pub fn invariant_differential(
    law: &FormalGroupLaw,
    r_max: u32,
) -> Result<InvariantDifferential, FglError> {
    if r_max > law.degree_cap() {
        return Err(FglError::DegreeCap {
            requested: r_max,
            cap: law.degree_cap(),
        });
    }
    Ok(InvariantDifferential {
        coefficients: omega_lenient(law, r_max),
    })
}

/// The recursion `omega_r = -sum_i a_{i1} omega_{r-i}`, reading
/// coefficients beyond the cap as zero.
pub(crate) fn omega_lenient(law: &FormalGroupLaw, r_max: u32) -> Vec<CoefficientPoly> {
    let mut w = vec![CoefficientPoly::one()];
    for r in 1..=r_max {
        let mut s = CoefficientPoly::zero();
        for i in 1..=r {
            let a = law.coeff(i, 1);
            if !a.is_zero() {
                s -= &(&a * &w[(r - i) as usize]);
            }
        }
        w.push(s);
    }
    w
}
