use std::collections::BTreeMap;

use super::{CoefficientPoly, Monomial, SymbolicError, Variable};

/// The k-th elementary symmetric polynomial in `roots`.
pub fn elementary(roots: &[Variable], k: usize) -> CoefficientPoly {
    // e_k via the generating product prod (1 + x_i t), tracked by degree
    let mut e: Vec<CoefficientPoly> = vec![CoefficientPoly::one()];
    for x in roots {
        let xv = CoefficientPoly::var(x.clone());
        let mut next = e.clone();
        next.push(CoefficientPoly::zero());
        for (d, p) in e.iter().enumerate() {
            next[d + 1] += &(p * &xv);
        }
        e = next;
    }
    e.get(k).cloned().unwrap_or_default()
}

fn root_exponents(m: &Monomial, roots: &[Variable]) -> Vec<u32> {
    roots.iter().map(|x| m.exponent(x)).collect()
}

/// Groups `p` by exponent vectors in the roots; values are coefficients in
/// the other variables.
fn by_root_exponents(p: &CoefficientPoly, roots: &[Variable]) -> BTreeMap<Vec<u32>, CoefficientPoly> {
    let mut out: BTreeMap<Vec<u32>, CoefficientPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (_, rest) = m.split(|v| roots.contains(v));
        out.entry(root_exponents(m, roots))
            .or_default()
            .add_term(rest, c.clone());
    }
    out
}

fn swap_roots(p: &CoefficientPoly, a: &Variable, b: &Variable) -> CoefficientPoly {
    let mut assign = BTreeMap::new();
    assign.insert(a.clone(), CoefficientPoly::var(b.clone()));
    assign.insert(b.clone(), CoefficientPoly::var(a.clone()));
    p.substitute_unchecked(&assign)
}

pub fn is_symmetric(p: &CoefficientPoly, roots: &[Variable]) -> bool {
    roots
        .windows(2)
        .all(|w| swap_roots(p, &w[0], &w[1]) == *p)
}

/// Rewrites a symmetric polynomial in `roots` as a polynomial in the
/// variables `targets[k-1]` standing for e_k, by leading-term subtraction
/// in graded lexicographic order on the roots.
pub fn symmetric_reduce(
    p: &CoefficientPoly,
    roots: &[Variable],
    targets: &[Variable],
) -> Result<CoefficientPoly, SymbolicError> {
    assert_eq!(roots.len(), targets.len(), "one target per root");
    if !is_symmetric(p, roots) {
        return Err(SymbolicError::NotSymmetric);
    }
    let elem: Vec<CoefficientPoly> = (1..=roots.len()).map(|k| elementary(roots, k)).collect();
    let mut rest = p.clone();
    let mut out = CoefficientPoly::zero();
    loop {
        let groups = by_root_exponents(&rest, roots);
        let lead = groups
            .iter()
            .max_by(|(a, _), (b, _)| {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            })
            .map(|(k, v)| (k.clone(), v.clone()));
        let Some((lambda, coeff)) = lead else {
            return Ok(out);
        };
        // for symmetric input the grlex leader is a partition
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymbolicError::NotSymmetric);
        }
        let mut in_roots = coeff.clone();
        let mut in_targets = coeff;
        for k in 0..roots.len() {
            let next = lambda.get(k + 1).copied().unwrap_or(0);
            let e = lambda[k] - next;
            if e > 0 {
                in_roots = &in_roots * &elem[k].pow(e);
                in_targets = in_targets.mul_monomial(&Monomial::power(targets[k].clone(), e));
            }
        }
        rest -= &in_roots;
        out += &in_targets;
    }
}

/// Substitutes e_k back as elementary symmetric polynomials.
pub fn expand_elementary(
    p: &CoefficientPoly,
    roots: &[Variable],
    targets: &[Variable],
) -> CoefficientPoly {
    let assign: BTreeMap<Variable, CoefficientPoly> = targets
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), elementary(roots, k + 1)))
        .collect();
    p.substitute_unchecked(&assign)
}
