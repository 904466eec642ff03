use crate::algebra::{AlgebraMap, Element, GradedFreeAlgebra, GradedSolver};
use crate::fgl::{FormalGroupLaw, Specialization, Theory};

use super::CatalogError;

/// The law of a theory at a truncation level. `ktheory+` is the law
/// `x + y + b x y`.
pub fn law_for(theory: &Theory, cap: u32) -> Result<FormalGroupLaw, CatalogError> {
    match theory {
        Theory::Custom(name) if name == "ktheory+" => Ok(FormalGroupLaw::universal(cap)
            .specialize(&Specialization::ktheory_positive())?),
        t => Ok(FormalGroupLaw::for_theory(t, cap)?),
    }
}

/// The coefficient map from the universal theory onto `theory`.
pub fn theory_specialization(theory: &Theory) -> Result<Specialization, CatalogError> {
    match theory {
        Theory::Universal => Ok(Specialization::identity()),
        Theory::Chow => Ok(Specialization::chow()),
        Theory::KTheory => Ok(Specialization::ktheory()),
        Theory::Custom(name) if name == "ktheory+" => Ok(Specialization::ktheory_positive()),
        Theory::Custom(name) => Err(CatalogError::Range(format!("unknown theory {name}"))),
    }
}

/// `c(T_{P^n}) = (1 + h)^(n+1)` from the Euler sequence.
pub fn tangent_total(alg: &GradedFreeAlgebra, h: &Element, n: u32) -> Element {
    alg.pow(&(&alg.one() + h), n + 1)
}

/// `c_1 .. c_r` of the bundle with total class `num / den`.
pub fn chern_quotient(z: &GradedFreeAlgebra, num: &Element, den: &Element, r: usize) -> Vec<Element> {
    let y = den - &z.one();
    let mut inv = z.zero();
    let mut term = z.one();
    for _ in 0..=z.dimension() {
        inv += &term;
        term = z.mul(&term, &(-&y));
    }
    let total = z.mul(num, &inv);
    (1..=r).map(|k| z.component(&total, k as i32)).collect()
}

/// Recomputes `i_*(b)` for every basis element `b` of `A(Z)` from the
/// projection formula against the push-forwards to a point:
/// `deg_X(a * i_* b) = deg_Z(i^* a * b)` for all `a`. Needs the pairing on
/// `A(X)` to be perfect, which is checked.
pub fn pushforward_by_duality(
    x_point: &AlgebraMap,
    z_point: &AlgebraMap,
    i_pull: &AlgebraMap,
    codim: usize,
) -> Result<Vec<Element>, CatalogError> {
    let x = x_point.source();
    let z = z_point.source();
    let n = x.rank();
    let dim = x.dimension() as i32;
    let pair = |a: &Element| x_point.apply(a).coefficient(0).clone();
    let images: Vec<Element> = (0..n)
        .map(|c| {
            let bc = x.basis_element(c);
            Element::from_coefficients((0..n).map(|a| pair(&x.mul(&x.basis_element(a), &bc))).collect())
        })
        .collect();
    let target: Vec<i32> = x.basis().iter().map(|b| dim - b.degree).collect();
    let source: Vec<i32> = x.basis().iter().map(|b| b.degree).collect();
    let solver = GradedSolver::from_degrees(&target, &source, images, 0);
    if !solver.block_kernels().is_empty() || !solver.is_surjective() {
        return Err(CatalogError::Mismatch("intersection pairing is not perfect".into()));
    }
    let mut out = Vec::with_capacity(z.rank());
    for b in 0..z.rank() {
        let zb = z.basis_element(b);
        let rhs = Element::from_coefficients(
            (0..n)
                .map(|a| {
                    let r = z.mul(&i_pull.apply(&x.basis_element(a)), &zb);
                    z_point.apply(&r).coefficient(0).clone()
                })
                .collect(),
        );
        let y = solver
            .solve(&rhs)
            .ok_or_else(|| CatalogError::Mismatch(format!("no push-forward for {}", z.basis()[b].label)))?;
        let y = Element::from_coefficients(y);
        let d = z.basis()[b].degree + codim as i32;
        if !y.is_zero() && !x.is_homogeneous(&y, d) {
            return Err(CatalogError::Mismatch(format!(
                "push-forward of {} is not of degree {d}",
                z.basis()[b].label
            )));
        }
        out.push(y);
    }
    Ok(out)
}
