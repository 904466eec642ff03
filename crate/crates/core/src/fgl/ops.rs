use crate::symbolic::{CoefficientPoly, Variable};

use super::{FglError, FormalGroupLaw};

/// A commutative ring in which the inputs of the law are nilpotent, so
/// that formal sums become finite.
pub trait FormalRing {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplication by a scalar of the coefficient ring.
    fn scale(&self, a: &Self::Elem, c: &CoefficientPoly) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Every product of more than this many inputs vanishes.
    fn nilpotency_bound(&self) -> u32;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// Polynomials modulo all monomials of total degree above `bound` in the
/// chosen geometric variables.
#[derive(Clone, Debug)]
pub struct Truncated {
    vars: Vec<Variable>,
    bound: u32,
}

impl Truncated {
    pub fn new(vars: Vec<Variable>, bound: u32) -> Self {
        Truncated { vars, bound }
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn reduce(&self, p: &CoefficientPoly) -> CoefficientPoly {
        p.truncate(&self.vars, self.bound)
    }
}

impl FormalRing for Truncated {
    type Elem = CoefficientPoly;

    fn zero(&self) -> CoefficientPoly {
        CoefficientPoly::zero()
    }

    fn add(&self, a: &CoefficientPoly, b: &CoefficientPoly) -> CoefficientPoly {
        a + b
    }

    fn neg(&self, a: &CoefficientPoly) -> CoefficientPoly {
        -a
    }

    fn mul(&self, a: &CoefficientPoly, b: &CoefficientPoly) -> CoefficientPoly {
        self.reduce(&(a * b))
    }

    fn scale(&self, a: &CoefficientPoly, c: &CoefficientPoly) -> CoefficientPoly {
        a * c
    }

    fn is_zero(&self, a: &CoefficientPoly) -> bool {
        a.is_zero()
    }

    fn nilpotency_bound(&self) -> u32 {
        self.bound
    }
}

fn powers<R: FormalRing>(ring: &R, x: &R::Elem, top: u32) -> Vec<R::Elem> {
    // powers[k] = x^k for k >= 1; stops early once a power vanishes
    let mut out = vec![ring.zero(), x.clone()];
    while (out.len() as u32) <= top {
        let next = ring.mul(out.last().unwrap(), x);
        if ring.is_zero(&next) {
            break;
        }
        out.push(next);
    }
    out
}

/// `F(x, y)`.
pub fn f_add<R: FormalRing>(ring: &R, law: &FormalGroupLaw, x: &R::Elem, y: &R::Elem) -> R::Elem {
    let top = law.degree_cap() + 1;
    let xp = powers(ring, x, top);
    let yp = powers(ring, y, top);
    let mut s = ring.add(x, y);
    for ((i, j), c) in law.ordered_terms() {
        let (Some(xi), Some(yj)) = (xp.get(i as usize), yp.get(j as usize)) else {
            continue;
        };
        let t = ring.mul(xi, yj);
        if !ring.is_zero(&t) {
            s = ring.add(&s, &ring.scale(&t, c));
        }
    }
    s
}

/// `F(x_1, F(x_2, ...))`; zero for an empty list.
pub fn f_sum<R: FormalRing>(ring: &R, law: &FormalGroupLaw, xs: &[R::Elem]) -> R::Elem {
    let mut it = xs.iter();
    let Some(first) = it.next() else {
        return ring.zero();
    };
    it.fold(first.clone(), |acc, x| f_add(ring, law, &acc, x))
}

/// The formal inverse `chi(x)`, the unique `y` with `F(x, y) = 0`.
pub fn formal_inverse<R: FormalRing>(ring: &R, law: &FormalGroupLaw, x: &R::Elem) -> R::Elem {
    let mut y = ring.neg(x);
    for _ in 0..=ring.nilpotency_bound() {
        let r = f_add(ring, law, x, &y);
        if ring.is_zero(&r) {
            break;
        }
        y = ring.sub(&y, &r);
    }
    y
}

/// `F(x, chi(y))`.
pub fn f_sub<R: FormalRing>(ring: &R, law: &FormalGroupLaw, x: &R::Elem, y: &R::Elem) -> R::Elem {
    f_add(ring, law, x, &formal_inverse(ring, law, y))
}

/// The n-series `[n](x)`; negative `n` goes through the formal inverse.
pub fn n_series<R: FormalRing>(
    ring: &R,
    law: &FormalGroupLaw,
    n: i64,
    x: &R::Elem,
) -> Result<R::Elem, FglError> {
    if n.unsigned_abs() > 1 << 20 {
        return Err(FglError::SeriesTooLong(n));
    }
    let base = if n < 0 {
        formal_inverse(ring, law, x)
    } else {
        x.clone()
    };
    let mut s = ring.zero();
    for _ in 0..n.unsigned_abs() {
        s = f_add(ring, law, &s, &base);
    }
    Ok(s)
}
