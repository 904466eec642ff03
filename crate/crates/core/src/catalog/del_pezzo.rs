use std::sync::Arc;

use crate::algebra::{tensor_product, Element, GradedFreeAlgebra, Presentation};
use crate::constructions::{
    blowup_surjective, point_algebra, projective_space, BlowupData, ProjectiveBundleResult, SurjectiveBlowup,
};
use crate::fgl::Theory;
use crate::symbolic::{parse_poly, VarContext};

use super::{law_for, CatalogError};

/// `A(P^n)` with hyperplane class `name`.
pub fn projective(theory: &Theory, n: u32, name: &str) -> Result<ProjectiveBundleResult, CatalogError> {
    let law = law_for(theory, n.max(1))?;
    Ok(projective_space(&law, n, name)?)
}

/// `A(P^1 x P^1)` with the two hyperplane classes `u`, `v`.
pub fn p1xp1(theory: &Theory) -> Result<(Arc<GradedFreeAlgebra>, Presentation), CatalogError> {
    let u = projective(theory, 1, "u")?;
    let v = projective(theory, 1, "v")?;
    let alg = tensor_product(&u.algebra, &v.algebra)?;
    let ctx = VarContext::new().with("u", 1).with("v", 1);
    let pres = Presentation::new(
        theory.scalar_ring(),
        vec![("u".into(), 1), ("v".into(), 1)],
        vec![parse_poly("u^2", &ctx)?, parse_poly("v^2", &ctx)?],
    )?;
    Ok((Arc::new(alg), pres))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DelPezzoBase {
    P2,
    P1xP1,
}

/// `P^2` blown up at `k` general points (or `P^1 x P^1` itself), with the
/// surjective presentation of each step.
#[derive(Clone, Debug)]
pub struct DelPezzo {
    pub algebra: Arc<GradedFreeAlgebra>,
    pub presentation: Presentation,
    pub steps: Vec<SurjectiveBlowup>,
}

/// Blows up one point of `x`, adjoining the exceptional class `name`.
fn blow_up_point(
    x: Arc<GradedFreeAlgebra>,
    pres: &Presentation,
    name: &str,
) -> Result<SurjectiveBlowup, CatalogError> {
    let point = x
        .point_class()
        .ok_or_else(|| CatalogError::Range("ambient surface has no point class".into()))?;
    let z = Arc::new(point_algebra(x.law()));
    let pull: Vec<Element> = (0..x.rank())
        .map(|b| if b == x.unit_index() { z.one() } else { z.zero() })
        .collect();
    let push = vec![x.basis_element(point)];
    let chern = vec![z.zero(), z.zero()];
    let data = BlowupData::new(x.clone(), z, pull, push, chern)?.with_labels(vec![name.to_string()]);
    let kernel: Vec<Element> = (0..x.rank())
        .filter(|&b| x.basis()[b].degree == 1)
        .map(|b| x.basis_element(b))
        .collect();
    Ok(blowup_surjective(data, pres, name, &[x.zero()], Some(kernel))?)
}

pub fn del_pezzo(theory: &Theory, k: usize, base: DelPezzoBase) -> Result<DelPezzo, CatalogError> {
    let (mut alg, mut pres) = match base {
        DelPezzoBase::P2 => {
            if k > 8 {
                return Err(CatalogError::Range(format!("at most 8 points, got {k}")));
            }
            let p2 = projective(theory, 2, "h")?;
            let ctx = VarContext::new().with("h", 1);
            let pres = Presentation::new(theory.scalar_ring(), vec![("h".into(), 1)], vec![parse_poly("h^3", &ctx)?])?;
            (p2.algebra, pres)
        }
        DelPezzoBase::P1xP1 => {
            if k != 0 {
                return Err(CatalogError::Range("the P^1 x P^1 base takes no points".into()));
            }
            p1xp1(theory)?
        }
    };
    let mut steps = Vec::with_capacity(k);
    for i in 1..=k {
        let step = blow_up_point(alg, &pres, &format!("e{i}"))?;
        alg = step.algebra.clone();
        pres = step.presentation.clone();
        steps.push(step);
    }
    Ok(DelPezzo {
        algebra: alg,
        presentation: pres,
        steps,
    })
}
