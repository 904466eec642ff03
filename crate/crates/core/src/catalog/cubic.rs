use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{AlgebraMap, Element, GradedFreeAlgebra, MapKind, Presentation};
use crate::constructions::{blowup_full, projective_space, BlowupData, BlowupResult, ProjectiveBundleResult};
use crate::fgl::{f_sub, n_series, Theory};
use crate::symbolic::{parse_poly, CoefficientPoly, Variable, VarContext};

use super::{chern_quotient, law_for, pushforward_by_duality, tangent_total, theory_specialization, CatalogError};

/// `P^3` blown up along the twisted cubic `P^1 -> P^3`, with classes
/// `alpha` (hyperplane), `e = [E]`, `x = j_*(eta)` and `z = j_*(zeta)`.
#[derive(Clone, Debug)]
pub struct TwistedCubic {
    pub ambient: ProjectiveBundleResult,
    pub center: ProjectiveBundleResult,
    pub blowup: BlowupResult,
}

impl TwistedCubic {
    pub fn algebra(&self) -> &Arc<GradedFreeAlgebra> {
        &self.blowup.algebra
    }

    pub fn class(&self, name: &str) -> Element {
        self.blowup.algebra.class(name)
    }
}

/// Maps each basis element `h^k` of `A(P^n)` to `image^k`.
pub(super) fn power_images(x: &GradedFreeAlgebra, z: &GradedFreeAlgebra, image: &Element) -> Vec<Element> {
    x.basis().iter().map(|b| z.pow(image, b.degree as u32)).collect()
}

/// Parses known push-forward formulas in `h`, specialized to `theory`.
pub(super) fn known_pushforwards(
    theory: &Theory,
    x: &GradedFreeAlgebra,
    h: &str,
    formulas: &[&str],
) -> Result<Vec<Element>, CatalogError> {
    let ctx = VarContext::new().with(h, 1);
    let spec = theory_specialization(theory)?;
    let mut assignment = BTreeMap::new();
    assignment.insert(Variable::new(h, 1), x.class(h));
    formulas
        .iter()
        .map(|f| {
            let p = spec.apply(&parse_poly(f, &ctx)?)?;
            Ok(x.eval_poly(&p, &assignment)?)
        })
        .collect()
}

/// Checks the known push-forwards against the ones forced by duality.
pub(super) fn checked_pushforwards(
    known: Vec<Element>,
    ambient: &ProjectiveBundleResult,
    center: &ProjectiveBundleResult,
    i_pull: &AlgebraMap,
    codim: usize,
) -> Result<Vec<Element>, CatalogError> {
    let derived = pushforward_by_duality(&ambient.pushforward, &center.pushforward, i_pull, codim)?;
    let x = &ambient.algebra;
    for (b, (k, d)) in known.iter().zip(&derived).enumerate() {
        if k != d {
            return Err(CatalogError::Mismatch(format!(
                "push-forward of {}: formula gives {}, duality gives {}",
                center.algebra.basis()[b].label,
                x.format(k),
                x.format(d)
            )));
        }
    }
    Ok(known)
}

pub fn blowup_twisted_cubic(theory: &Theory) -> Result<TwistedCubic, CatalogError> {
    let law = law_for(theory, 3)?;
    let p3 = projective_space(&law, 3, "alpha")?;
    let p1 = projective_space(&law, 1, "eta")?;
    let x = p3.algebra.clone();
    let z = p1.algebra.clone();
    let restricted = n_series(z.as_ref(), z.law(), 3, &p1.zeta)?;
    let pull = power_images(&x, &z, &restricted);
    let i_pull = AlgebraMap::new(x.clone(), z.clone(), pull.clone(), MapKind::RingHom)?;
    let known = known_pushforwards(theory, &x, "alpha", &["3*alpha^2 + 2*a11*alpha^3", "alpha^3"])?;
    let push = checked_pushforwards(known, &p3, &p1, &i_pull, 2)?;
    let num = i_pull.apply(&tangent_total(&x, &p3.zeta, 3));
    let den = tangent_total(&z, &p1.zeta, 1);
    let chern = chern_quotient(&z, &num, &den, 2);
    let data = BlowupData::new(x, z.clone(), pull, push, chern)?
        .with_labels(vec!["e".into(), "x".into()])
        .with_pushforward_name("e", 0, z.one())
        .with_pushforward_name("x", 0, p1.zeta.clone())
        .with_pushforward_name("z", 1, z.one());
    let blowup = blowup_full(data)?;
    Ok(TwistedCubic {
        ambient: p3,
        center: p1,
        blowup,
    })
}

/// `([4] alpha -_F [2] e)^2 * alpha`, the class counting secant lines
/// through a general point.
pub fn secant_class(tc: &TwistedCubic) -> Result<Element, CatalogError> {
    let bl = tc.algebra();
    let law = bl.law();
    let d = f_sub(
        bl.as_ref(),
        law,
        &n_series(bl.as_ref(), law, 4, &tc.class("alpha"))?,
        &n_series(bl.as_ref(), law, 2, &tc.class("e"))?,
    );
    Ok(bl.mul(&bl.mul(&d, &d), &tc.class("alpha")))
}

/// Degree of the secant class; errors unless it is an integer multiple
/// of the point class.
pub fn count_secants(tc: &TwistedCubic) -> Result<CoefficientPoly, CatalogError> {
    point_multiple(tc.algebra(), &secant_class(tc)?)
}

/// The coefficient `c` of `s = c * [pt]`.
pub(super) fn point_multiple(alg: &GradedFreeAlgebra, s: &Element) -> Result<CoefficientPoly, CatalogError> {
    let p = alg
        .point_class()
        .ok_or_else(|| CatalogError::Range("no point class".into()))?;
    if let Some((i, _)) = s.support().find(|(i, _)| *i != p) {
        return Err(CatalogError::Mismatch(format!(
            "{} is not a multiple of the point class (term {})",
            alg.format(s),
            alg.basis()[i].label
        )));
    }
    let c = s.coefficient(p).clone();
    if c.has_coefficient_support() {
        return Err(CatalogError::Mismatch(format!("count {c} depends on the coefficients")));
    }
    Ok(c)
}

/// Relations of the blowup in the generators `alpha, e, x, z`, universal
/// form; specialize the coefficients for other theories.
pub const TWISTED_CUBIC_RELATIONS: [&str; 12] = [
    "alpha^4",
    "alpha^2*e",
    "alpha*e - 3*x",
    "alpha*x",
    "alpha*z - 3*alpha^3",
    "z^2",
    "x^2",
    "x*z",
    "e^2 + z + 10*a11*alpha^3",
    "e*x + alpha^3",
    "e*z - 10*alpha^3",
    "3*alpha^2 - z - 10*x - 8*a11*alpha^3",
];

/// The presentation `A(pt)[alpha, e, x, z]/(relations)`, checked against
/// the constructed algebra.
pub fn twisted_cubic_presentation(theory: &Theory, tc: &TwistedCubic) -> Result<Presentation, CatalogError> {
    let gens = vec![("alpha".to_string(), 1), ("e".into(), 1), ("x".into(), 2), ("z".into(), 2)];
    let ctx = VarContext::new().with("alpha", 1).with("e", 1).with("x", 2).with("z", 2);
    let spec = theory_specialization(theory)?;
    let rels = TWISTED_CUBIC_RELATIONS
        .iter()
        .map(|r| Ok(spec.apply(&parse_poly(r, &ctx)?)?))
        .collect::<Result<Vec<_>, CatalogError>>()?;
    let pres = Presentation::new(theory.scalar_ring(), gens, rels)?;
    if let Some(k) = pres.first_failure(tc.algebra())? {
        return Err(CatalogError::Mismatch(format!("relation {} fails", pres.relations()[k])));
    }
    Ok(pres)
}
