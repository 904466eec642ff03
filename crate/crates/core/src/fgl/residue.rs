//! Push-forward along a projective bundle `P(E) -> X` as a residue:
//! `p_*(f(zeta)) = Res_{t=0} f(t) omega(t) dt / prod_i F(t, alpha_i)`
//! where `alpha_i` are the Chern roots of `E`.

use std::collections::BTreeMap;

use crate::symbolic::{symmetric_reduce, CoefficientPoly, Variable};

use super::ops::{FormalRing, Truncated};
use super::{omega_lenient, FglError, FormalGroupLaw};

type Laurent = BTreeMap<i32, CoefficientPoly>;

/// The variable standing for `c_k(E)` in universal residues.
pub fn chern_variable(k: usize) -> Variable {
    Variable::new(format!("c{k}"), k as i32)
}

fn root_variable(i: usize) -> Variable {
    Variable::new(format!("x_{i}"), 1)
}

fn laurent_mul(ring: &Truncated, a: &Laurent, b: &Laurent, pmax: i32) -> Laurent {
    let mut out = Laurent::new();
    for (i, p) in a {
        for (j, q) in b {
            if i + j > pmax {
                continue;
            }
            let t = ring.mul(p, q);
            if !t.is_zero() {
                let e = out.entry(i + j).or_default();
                *e += &t;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `F(t, alpha) / t` as a Laurent series in `t`.
fn shifted_factor(ring: &Truncated, law: &FormalGroupLaw, alpha: &CoefficientPoly) -> Laurent {
    let top = law.degree_cap() + 1;
    let mut ap = vec![CoefficientPoly::one(), alpha.clone()];
    while (ap.len() as u32) <= top {
        let next = ring.mul(ap.last().unwrap(), alpha);
        if next.is_zero() {
            break;
        }
        ap.push(next);
    }
    let mut out = Laurent::new();
    out.insert(-1, alpha.clone());
    out.insert(0, CoefficientPoly::one());
    for ((a, b), c) in law.ordered_terms() {
        if let Some(p) = ap.get(b as usize) {
            *out.entry(a as i32 - 1).or_default() += &(c * p);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Residue of `t^m omega(t) / prod_i F(t, alpha_i)` computed in `ring`.
fn residue_core(
    m: u32,
    roots: &[CoefficientPoly],
    ring: &Truncated,
    law: &FormalGroupLaw,
) -> CoefficientPoly {
    let r = roots.len() as i32;
    let target = r - 1 - m as i32;
    let bound = ring.bound() as i32;
    let pmax = target + bound;
    if pmax < 0 {
        return CoefficientPoly::zero();
    }
    let mut d = Laurent::from([(0, CoefficientPoly::one())]);
    for a in roots {
        d = laurent_mul(ring, &d, &shifted_factor(ring, law, a), pmax);
    }
    // 1/D = sum_k (-N)^k with N = D - 1 nilpotent
    let mut neg_n = d;
    *neg_n.entry(0).or_default() -= &CoefficientPoly::one();
    for v in neg_n.values_mut() {
        *v = -&*v;
    }
    neg_n.retain(|_, v| !v.is_zero());
    let mut inv = Laurent::from([(0, CoefficientPoly::one())]);
    let mut pow = inv.clone();
    for _ in 0..bound {
        pow = laurent_mul(ring, &pow, &neg_n, pmax);
        if pow.is_empty() {
            break;
        }
        for (k, v) in &pow {
            *inv.entry(*k).or_default() += v;
        }
    }
    let omega = omega_lenient(law, (target + bound).max(0) as u32);
    let mut out = CoefficientPoly::zero();
    for (p, c) in &inv {
        let q = target - p;
        if q < 0 {
            continue;
        }
        if let Some(w) = omega.get(q as usize) {
            out += &ring.mul(c, w);
        }
    }
    out
}

/// `p_*(zeta^m)` for a rank `r` bundle as a polynomial in the Chern
/// classes `c1..cr`, keeping root degree at most `bound`.
pub fn residue_universal(
    m: u32,
    r: usize,
    law: &FormalGroupLaw,
    bound: u32,
) -> Result<CoefficientPoly, FglError> {
    if r == 0 {
        return Err(FglError::ZeroRank);
    }
    let roots: Vec<Variable> = (1..=r).map(root_variable).collect();
    let chern: Vec<Variable> = (1..=r).map(chern_variable).collect();
    let ring = Truncated::new(roots.clone(), bound);
    let polys: Vec<CoefficientPoly> = roots.iter().cloned().map(CoefficientPoly::var).collect();
    let res = residue_core(m, &polys, &ring, law);
    Ok(symmetric_reduce(&res, &roots, &chern)?)
}

/// `p_*(sum_m phi[m] zeta^m)` given `chern[k-1] = c_k(E)` in the base.
/// Results are truncated at degree `bound` in `base_vars`.
pub fn residue_pushforward(
    phi: &[CoefficientPoly],
    chern: &[CoefficientPoly],
    law: &FormalGroupLaw,
    base_vars: &[Variable],
    bound: u32,
) -> Result<CoefficientPoly, FglError> {
    let r = chern.len();
    let assignment: BTreeMap<Variable, CoefficientPoly> = chern
        .iter()
        .enumerate()
        .map(|(k, c)| (chern_variable(k + 1), c.clone()))
        .collect();
    let ring = Truncated::new(base_vars.to_vec(), bound);
    let mut out = CoefficientPoly::zero();
    for (m, f) in phi.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let u = residue_universal(m as u32, r, law, bound)?;
        let img = ring.reduce(&u.substitute_unchecked(&assignment));
        out += &ring.mul(f, &img);
    }
    Ok(out)
}

/// As `residue_pushforward`, with the Chern roots given explicitly.
pub fn residue_pushforward_split(
    phi: &[CoefficientPoly],
    roots: &[CoefficientPoly],
    law: &FormalGroupLaw,
    base_vars: &[Variable],
    bound: u32,
) -> Result<CoefficientPoly, FglError> {
    if roots.is_empty() {
        return Err(FglError::ZeroRank);
    }
    let ring = Truncated::new(base_vars.to_vec(), bound);
    let mut out = CoefficientPoly::zero();
    for (m, f) in phi.iter().enumerate() {
        if !f.is_zero() {
            out += &ring.mul(f, &residue_core(m as u32, roots, &ring, law));
        }
    }
    Ok(out)
}
