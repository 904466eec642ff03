use std::sync::Arc;

use crate::algebra::{AlgebraMap, Element, GradedFreeAlgebra, MapKind, Presentation};
use crate::constructions::{blowup_full, full_presentation, projective_space, BlowupData, BlowupResult, ProjectiveBundleResult};
use crate::fgl::{f_sub, n_series, Theory};
use crate::symbolic::{parse_poly, CoefficientPoly, VarContext, Variable};

use super::cubic::{checked_pushforwards, known_pushforwards, point_multiple, power_images};
use super::{chern_quotient, law_for, tangent_total, CatalogError};

/// `P^5` blown up along the Veronese surface `P^2 -> P^5`, with classes
/// `alpha` and `e{a}{b} = j_*(eta^a zeta^b)` for `0 <= a, b <= 2`.
#[derive(Clone, Debug)]
pub struct Veronese {
    pub ambient: ProjectiveBundleResult,
    pub center: ProjectiveBundleResult,
    pub blowup: BlowupResult,
}

impl Veronese {
    pub fn algebra(&self) -> &Arc<GradedFreeAlgebra> {
        &self.blowup.algebra
    }

    pub fn class(&self, name: &str) -> Element {
        self.blowup.algebra.class(name)
    }

    /// `e_{a,b}`.
    pub fn e(&self, a: usize, b: usize) -> Element {
        self.class(&format!("e{a}{b}"))
    }
}

pub fn blowup_veronese(theory: &Theory) -> Result<Veronese, CatalogError> {
    let law = law_for(theory, 5)?;
    let p5 = projective_space(&law, 5, "alpha")?;
    let p2 = projective_space(&law, 2, "eta")?;
    let x = p5.algebra.clone();
    let z = p2.algebra.clone();
    let restricted = n_series(z.as_ref(), z.law(), 2, &p2.zeta)?;
    let pull = power_images(&x, &z, &restricted);
    let i_pull = AlgebraMap::new(x.clone(), z.clone(), pull.clone(), MapKind::RingHom)?;
    let known = known_pushforwards(
        theory,
        &x,
        "alpha",
        &[
            "4*alpha^3 + 3*a11*alpha^4 + 3*a21*alpha^5",
            "2*alpha^4 + a11*alpha^5",
            "alpha^5",
        ],
    )?;
    let push = checked_pushforwards(known, &p5, &p2, &i_pull, 3)?;
    let num = i_pull.apply(&tangent_total(&x, &p5.zeta, 5));
    let den = tangent_total(&z, &p2.zeta, 2);
    let chern = chern_quotient(&z, &num, &den, 3);
    let labels = (0..2).flat_map(|b| (0..3).map(move |a| format!("e{a}{b}"))).collect();
    let mut data = BlowupData::new(x, z.clone(), pull, push, chern)?.with_labels(labels);
    for b in 0..3 {
        for a in 0..3 {
            let eta = z.pow(&p2.zeta, a as u32);
            data = data.with_pushforward_name(&format!("e{a}{b}"), b, eta);
        }
    }
    let blowup = blowup_full(data)?;
    Ok(Veronese {
        ambient: p5,
        center: p2,
        blowup,
    })
}

/// `([6] alpha -_F [2] e00)^5`, the class of conics tangent to five
/// general conics.
pub fn steiner_class(v: &Veronese) -> Result<Element, CatalogError> {
    let bl = v.algebra();
    let law = bl.law();
    let d = f_sub(
        bl.as_ref(),
        law,
        &n_series(bl.as_ref(), law, 6, &v.class("alpha"))?,
        &n_series(bl.as_ref(), law, 2, &v.e(0, 0))?,
    );
    Ok(bl.pow(&d, 5))
}

pub fn count_steiner(v: &Veronese) -> Result<CoefficientPoly, CatalogError> {
    point_multiple(v.algebra(), &steiner_class(v)?)
}

/// `([6] alpha)^5` in `P^5`, the count before removing double lines.
pub fn naive_steiner(theory: &Theory) -> Result<CoefficientPoly, CatalogError> {
    let law = law_for(theory, 5)?;
    let p5 = projective_space(&law, 5, "alpha")?;
    let x = &p5.algebra;
    let h = n_series(x.as_ref(), x.law(), 6, &p5.zeta)?;
    point_multiple(x, &x.pow(&h, 5))
}

/// The full presentation in `alpha` and the nine `e{a}{b}`.
pub fn veronese_presentation(theory: &Theory, v: &Veronese) -> Result<Presentation, CatalogError> {
    let ctx = VarContext::new().with("alpha", 1);
    let base = Presentation::new(theory.scalar_ring(), vec![("alpha".into(), 1)], vec![parse_poly("alpha^6", &ctx)?])?;
    Ok(full_presentation(&v.blowup, &base, |s, b| format!("e{b}{s}"))?)
}

/// `e_{a,b} * e_{c,d} = j_*(eta^{a+c} zeta^{b+d} chi(zeta))`, kept on `E`
/// and written as a combination of the symbols `e{p}{q}`, `q <= 2`, of
/// degree `1 + p + q`.
pub fn pushforward_product(v: &Veronese, a: usize, b: usize, c: usize, d: usize) -> CoefficientPoly {
    let e = &v.blowup.exceptional;
    let ealg = &e.algebra;
    let z = &v.center.algebra;
    let g = ealg.mul(
        &ealg.mul(
            &e.pull(&z.pow(&v.center.zeta, (a + c) as u32)),
            &ealg.pow(&e.zeta, (b + d) as u32),
        ),
        &v.blowup.chi_zeta,
    );
    let mut out = CoefficientPoly::zero();
    for (q, part) in e.components(&g).iter().enumerate() {
        for (k, coeff) in part.support() {
            let p = z.basis()[k].degree;
            let sym = CoefficientPoly::var(Variable::new(format!("e{p}{q}"), 1 + p + q as i32));
            out = &out + &(coeff * &sym);
        }
    }
    out
}

/// All 81 products `e_{a,b} * e_{c,d}`, rows and columns in the order
/// `e00, e01, e02, e10, ..`.
pub fn pushforward_table(v: &Veronese) -> Vec<Vec<CoefficientPoly>> {
    let idx: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    idx.iter()
        .map(|&(a, b)| idx.iter().map(|&(c, d)| pushforward_product(v, a, b, c, d)).collect())
        .collect()
}
