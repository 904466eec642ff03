use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{
    AlgebraError, AlgebraMap, BasisElement, Element, GradedFreeAlgebra, GradedSolver, Presentation,
};
use crate::symbolic::{parse_poly, CoefficientPoly, Variable};

use super::blowup::{blowup_full, BlowupData, BlowupResult};
use super::bundle::{join_label, power_label};
use super::ConstructionError;

/// The blowup as `A(X)[T]/(P(T), T ker i^*)` for a surjective `i^*`, with
/// `T` the class of the exceptional divisor.
#[derive(Clone, Debug)]
pub struct SurjectiveBlowup {
    pub presentation: Presentation,
    pub algebra: Arc<GradedFreeAlgebra>,
    /// `T` in `algebra`.
    pub generator: Element,
    /// Lifts of `c_1 .. c_(r-1)` in `A(X)`, taken from `full.normal_chern`.
    pub lifts: Vec<Element>,
    /// Generators of `ker i^*` in `A(X)`.
    pub kernel: Vec<Element>,
    /// The blowup built from the full presentation.
    pub full: BlowupResult,
    /// The isomorphism onto `full.algebra`, `T -> j_*(1)`.
    pub iso: AlgebraMap,
}

/// The integer-block solver for `i^*` over the basis of `A(X)`.
fn pullback_solver(data: &BlowupData) -> Result<GradedSolver, ConstructionError> {
    let x = &data.ambient;
    let degrees: Vec<i32> = x.basis().iter().map(|b| b.degree).collect();
    Ok(GradedSolver::new(&data.center, &degrees, data.i_pull.images().to_vec(), 0)?)
}

/// Checks that `i^*` is onto over the integers, returning the solver.
pub fn check_surjective(data: &BlowupData) -> Result<GradedSolver, ConstructionError> {
    let solver = pullback_solver(data)?;
    if !solver.is_surjective() {
        return Err(ConstructionError::NotSurjective(solver.failing_degrees()));
    }
    Ok(solver)
}

/// Generators of `ker i^*`: each integer kernel vector of a degree block,
/// corrected in higher degrees so that it restricts to zero.
pub fn kernel_generators(data: &BlowupData, solver: &GradedSolver) -> Result<Vec<Element>, ConstructionError> {
    let x = &data.ambient;
    let mut out = Vec::new();
    for v in solver.block_kernels() {
        let mut k = Element::from_coefficients(v.into_iter().map(CoefficientPoly::from).collect());
        let rest = data.i_pull.apply(&k);
        if !rest.is_zero() {
            let fix = solver
                .solve(&rest)
                .ok_or_else(|| ConstructionError::NotSurjective(solver.failing_degrees()))?;
            k -= &Element::from_coefficients(fix);
        }
        debug_assert!(data.i_pull.apply(&k).is_zero());
        debug_assert_eq!(k.rank(), x.rank());
        out.push(k);
    }
    Ok(out)
}

/// Writes an element of `A(X)` as a polynomial, reading each basis label
/// as a monomial in the presentation's generators.
pub(crate) fn as_poly(x: &GradedFreeAlgebra, e: &Element, base: &Presentation) -> Result<CoefficientPoly, ConstructionError> {
    let ctx = base.context();
    let mut out = CoefficientPoly::zero();
    for (i, c) in e.support() {
        let label = &x.basis()[i].label;
        let m = parse_poly(label, &ctx)
            .map_err(|_| ConstructionError::Input(format!("basis label {label} is not a monomial in the generators")))?;
        out += &(c * &m);
    }
    Ok(out)
}

// x-part and T^k-parts (k = 1 .. 2r-2, index 0 unused) of an element
struct Parts {
    x: Element,
    z: Vec<Element>,
}

/// Builds the surjective presentation, its structure constants and the
/// isomorphism with the full construction.
///
/// `base` presents `A(X)` with the basis labels of `data.ambient` as
/// monomials in its generators, each a named class of `A(X)`.
pub fn blowup_surjective(
    data: BlowupData,
    base: &Presentation,
    generator: &str,
    lifts: &[Element],
    kernel_gens: Option<Vec<Element>>,
) -> Result<SurjectiveBlowup, ConstructionError> {
    data.validate()?;
    let r = data.codimension();
    let x = data.ambient.clone();
    let z = data.center.clone();
    if lifts.len() != r - 1 {
        return Err(ConstructionError::BadLift(format!("expected {} lifts, got {}", r - 1, lifts.len())));
    }
    // T restricts to chi(zeta) on E, so P(T) uses the normal classes in the
    // coordinate -chi(zeta); they agree with c_k(N) in Chow.
    let full = blowup_full(data.clone())?;
    let chern = full.normal_chern.clone();
    for (k, l) in lifts.iter().enumerate() {
        if data.i_pull.apply(l) != chern[k] {
            return Err(ConstructionError::BadLift(format!("i^* of lift {} is not c_{}", k + 1, k + 1)));
        }
    }
    let solver = check_surjective(&data)?;
    let kernel = match kernel_gens {
        Some(k) => {
            if let Some(bad) = k.iter().find(|e| !data.i_pull.apply(e).is_zero()) {
                return Err(ConstructionError::Input(format!("{} is not in ker i^*", x.format(bad))));
            }
            k
        }
        None => kernel_generators(&data, &solver)?,
    };

    let nx = x.rank();
    let nz = z.rank();
    // s(b) for each basis element of A(Z)
    let sections: Vec<Element> = (0..nz)
        .map(|b| {
            solver
                .solve(&z.basis_element(b))
                .map(Element::from_coefficients)
                .ok_or_else(|| ConstructionError::NotSurjective(solver.failing_degrees()))
        })
        .collect::<Result<_, _>>()?;

    let mut basis: Vec<BasisElement> = x.basis().to_vec();
    for k in 1..r {
        for (b, s) in sections.iter().enumerate() {
            let t = power_label(generator, k);
            let label = match s.support().collect::<Vec<_>>().as_slice() {
                [(i, c)] if c.is_one() => join_label(&t, &x.basis()[*i].label),
                _ => format!("{t}*({})", as_poly(&x, s, base).map(|p| p.to_string()).unwrap_or_else(|_| z.basis()[b].label.clone())),
            };
            basis.push(BasisElement::new(label, k as i32 + z.basis()[b].degree));
        }
    }
    let n = basis.len();

    let split = |i: usize| -> Parts {
        let mut z_parts = vec![z.zero(); 2 * r - 1];
        if i < nx {
            return Parts { x: x.basis_element(i), z: z_parts };
        }
        let k = 1 + (i - nx) / nz;
        z_parts[k] = z.basis_element((i - nx) % nz);
        Parts { x: x.zero(), z: z_parts }
    };
    let join = |p: &Parts| -> Element {
        let mut out = Element::zero(n);
        for (i, c) in p.x.support() {
            out.add_to(i, c);
        }
        for k in 1..r {
            for (b, c) in p.z[k].support() {
                out.add_to(nx + (k - 1) * nz + b, c);
            }
        }
        out
    };
    let sign = |m: usize| if m % 2 == 1 { 1 } else { -1 };
    let multiply = |a: &Parts, b: &Parts| -> Parts {
        let mut p = Parts {
            x: x.mul(&a.x, &b.x),
            z: vec![z.zero(); 2 * r - 1],
        };
        let ra = data.i_pull.apply(&a.x);
        let rb = data.i_pull.apply(&b.x);
        for k in 1..r {
            p.z[k] += &z.mul(&ra, &b.z[k]);
            p.z[k] += &z.mul(&a.z[k], &rb);
            for l in 1..r {
                p.z[k + l] += &z.mul(&a.z[k], &b.z[l]);
            }
        }
        // T^r = sum_m (-1)^(m+1) c_m T^(r-m), with c_r T^0 acting as i_*
        for k in (r..=2 * r - 2).rev() {
            let top = std::mem::replace(&mut p.z[k], z.zero());
            if top.is_zero() {
                continue;
            }
            for m in 1..r {
                let t = z.mul(&chern[m - 1], &top).scale_int(sign(m));
                p.z[k - m] += &t;
            }
            let pushed = data.i_push.apply(&top).scale_int(sign(r));
            if k == r {
                p.x += &pushed;
            } else {
                p.z[k - r] += &data.i_pull.apply(&pushed);
            }
        }
        p
    };
    let mut algebra = GradedFreeAlgebra::from_products(basis, x.unit_index(), x.dimension(), x.law().clone(), |i, j| {
        Ok(join(&multiply(&split(i), &split(j))))
    })?;
    if let Some(p) = x.point_class() {
        algebra = algebra.with_point_class(p);
    }
    let embed = |e: &Element| join(&Parts { x: e.clone(), z: vec![z.zero(); 2 * r - 1] });
    for (name, v) in x.names() {
        algebra.set_name(name, embed(v));
    }
    let t = join(&Parts {
        x: x.zero(),
        z: (0..2 * r - 1).map(|k| if k == 1 { z.one() } else { z.zero() }).collect(),
    });
    algebra.set_name(generator, t.clone());
    let algebra = Arc::new(algebra);

    // presentation over the generators of A(X) and T
    let tv = CoefficientPoly::var(Variable::new(generator, 1));
    let mut rel = tv.pow(r as u32);
    for (m, l) in lifts.iter().enumerate() {
        let c = as_poly(&x, l, base)?;
        rel += &(&c * &tv.pow((r - 2 - m) as u32 + 1)).scale(&BigInt::from(-sign(m + 1)));
    }
    let top = as_poly(&x, &data.i_push.apply(&z.one()), base)?;
    rel += &top.scale(&BigInt::from(-sign(r)));
    let mut relations = base.relations().to_vec();
    relations.push(rel);
    for k in &kernel {
        relations.push(&tv * &as_poly(&x, k, base)?);
    }
    let mut generators = base.generators().to_vec();
    generators.push((generator.to_string(), 1));
    let presentation = Presentation::new(base.scalars(), generators, relations)?;
    if let Some(k) = presentation.first_failure(&algebra)? {
        return Err(ConstructionError::Reduction(format!(
            "relation {} fails in the constructed algebra",
            presentation.relations()[k]
        )));
    }

    let iso = isomorphism(&algebra, &full, &sections, nx, nz, r)?;
    Ok(SurjectiveBlowup {
        presentation,
        algebra,
        generator: t,
        lifts: lifts.to_vec(),
        kernel,
        full,
        iso,
    })
}

/// `T^k s(b) -> j_*(1)^k pi^* s(b)`, checked multiplicative and bijective.
fn isomorphism(
    algebra: &Arc<GradedFreeAlgebra>,
    full: &BlowupResult,
    sections: &[Element],
    nx: usize,
    nz: usize,
    r: usize,
) -> Result<AlgebraMap, ConstructionError> {
    let bl = &full.algebra;
    let e = &full.exceptional_divisor;
    let mut images: Vec<Element> = (0..nx).map(|i| full.pi(&full.data.ambient.basis_element(i))).collect();
    let mut epow = e.clone();
    for _ in 1..r {
        for s in sections.iter().take(nz) {
            images.push(bl.mul(&epow, &full.pi(s)));
        }
        epow = bl.mul(&epow, e);
    }
    let iso = AlgebraMap::ring_hom(algebra.clone(), bl.clone(), images.clone())?;
    let degrees: Vec<i32> = algebra.basis().iter().map(|b| b.degree).collect();
    let solver = GradedSolver::new(bl, &degrees, images, 0)?;
    if algebra.rank() != bl.rank() || !solver.is_surjective() {
        return Err(ConstructionError::Algebra(AlgebraError::Invalid(
            "surjective and full presentations are not isomorphic".into(),
        )));
    }
    Ok(iso)
}
