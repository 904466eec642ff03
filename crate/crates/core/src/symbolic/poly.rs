use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{SymbolicError, Variable};

/// A monomial: variables with positive exponents, sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Variable, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Total degree, `sum exponent * var.degree`.
    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(v, e)| v.degree() * *e as i32).sum()
    }

    /// Sum of exponents over the variables accepted by `pred`.
    pub fn exponent_sum(&self, pred: impl Fn(&Variable) -> bool) -> u32 {
        self.0.iter().filter(|(v, _)| pred(v)).map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, x)| (v.clone(), x * e)).collect())
    }

    /// Splits into the part made of variables accepted by `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&Variable) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            let d = if j < other.0.len() && other.0[j].0 == *v {
                j += 1;
                other.0[j - 1].1
            } else {
                0
            };
            match e.cmp(&d) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v.clone(), e - d)),
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.0.iter().map(|(v, _)| v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        // coefficient-ring variables first, as in "2*a11*u^2"
        let ordered = self
            .0
            .iter()
            .filter(|(v, _)| v.is_coefficient())
            .chain(self.0.iter().filter(|(v, _)| !v.is_coefficient()));
        for (k, (v, e)) in ordered.enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact sparse multivariate polynomial with big-integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoefficientPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl CoefficientPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CoefficientPoly { terms }
    }

    pub fn lazard(i: u32, j: u32) -> Self {
        Self::var(Variable::lazard(i, j))
    }

    pub fn beta() -> Self {
        Self::var(Variable::beta())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = CoefficientPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value when the polynomial is an integer constant (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CoefficientPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        CoefficientPoly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.variables().cloned()).collect()
    }

    /// The total degree when homogeneous; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_component(&self, d: i32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    /// Homogeneous components keyed by degree; they sum back to `self`.
    pub fn components(&self) -> BTreeMap<i32, CoefficientPoly> {
        let mut out: BTreeMap<i32, CoefficientPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        CoefficientPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term whose exponent sum over `geometric` exceeds `bound`.
    pub fn truncate(&self, geometric: &[Variable], bound: u32) -> Self {
        self.filter(|m| m.exponent_sum(|v| geometric.contains(v)) <= bound)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of_power(&self, v: &Variable, k: u32) -> Self {
        let mut out = CoefficientPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                let rest = Monomial(m.0.iter().filter(|(w, _)| w != v).cloned().collect());
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Largest exponent of `v` appearing in any term.
    pub fn degree_in(&self, v: &Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Homomorphic substitution. Each image must be homogeneous of the
    /// degree of its variable unless `waive_grading` is set.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<Variable, CoefficientPoly>,
        waive_grading: bool,
    ) -> Result<Self, SymbolicError> {
        if !waive_grading {
            for (v, img) in assignment {
                if !img.is_homogeneous_of(v.degree()) {
                    return Err(SymbolicError::Grading {
                        variable: v.name().to_string(),
                        expected: v.degree(),
                        image: img.to_string(),
                    });
                }
            }
        }
        Ok(self.substitute_unchecked(assignment))
    }

    pub(crate) fn substitute_unchecked(
        &self,
        assignment: &BTreeMap<Variable, CoefficientPoly>,
    ) -> Self {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Variable, u32), CoefficientPoly> = BTreeMap::new();
        let mut out = CoefficientPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = CoefficientPoly::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in m.factors() {
                match assignment.get(v) {
                    Some(img) => {
                        let p = powers
                            .entry((v.clone(), *e))
                            .or_insert_with(|| img.pow(*e))
                            .clone();
                        acc = &acc * &p;
                        if acc.is_zero() {
                            break;
                        }
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            if !acc.is_zero() {
                out += &acc.mul_monomial(&Monomial(kept));
            }
        }
        out
    }

    /// Variables sharing a name but not a degree between the two operands.
    fn context_clash(&self, other: &Self) -> Option<String> {
        let mine: BTreeMap<String, i32> = self
            .variables()
            .into_iter()
            .map(|v| (v.name().to_string(), v.degree()))
            .collect();
        other
            .variables()
            .into_iter()
            .find(|v| mine.get(v.name()).is_some_and(|d| *d != v.degree()))
            .map(|v| v.name().to_string())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SymbolicError> {
        match self.context_clash(other) {
            Some(name) => Err(SymbolicError::Context(name)),
            None => Ok(self + other),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SymbolicError> {
        match self.context_clash(other) {
            Some(name) => Err(SymbolicError::Context(name)),
            None => Ok(self * other),
        }
    }

    /// True if every variable is a coefficient variable (`a_ij` or `b`).
    pub fn is_scalar(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.variables().all(Variable::is_coefficient))
    }

    /// True if some Lazard generator or `b` occurs.
    pub fn has_coefficient_support(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.variables().any(Variable::is_coefficient))
    }
}

impl From<i64> for CoefficientPoly {
    fn from(c: i64) -> Self {
        CoefficientPoly::constant(c)
    }
}

impl From<BigInt> for CoefficientPoly {
    fn from(c: BigInt) -> Self {
        CoefficientPoly::constant(c)
    }
}

impl From<Variable> for CoefficientPoly {
    fn from(v: Variable) -> Self {
        CoefficientPoly::var(v)
    }
}

impl AddAssign<&CoefficientPoly> for CoefficientPoly {
    fn add_assign(&mut self, rhs: &CoefficientPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&CoefficientPoly> for CoefficientPoly {
    fn sub_assign(&mut self, rhs: &CoefficientPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &CoefficientPoly {
    type Output = CoefficientPoly;
    fn add(self, rhs: &CoefficientPoly) -> CoefficientPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CoefficientPoly {
    type Output = CoefficientPoly;
    fn sub(self, rhs: &CoefficientPoly) -> CoefficientPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &CoefficientPoly {
    type Output = CoefficientPoly;
    fn mul(self, rhs: &CoefficientPoly) -> CoefficientPoly {
        let mut out = CoefficientPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &CoefficientPoly {
    type Output = CoefficientPoly;
    fn neg(self) -> CoefficientPoly {
        CoefficientPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CoefficientPoly {
            type Output = CoefficientPoly;
            fn $f(self, rhs: CoefficientPoly) -> CoefficientPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CoefficientPoly> for CoefficientPoly {
            type Output = CoefficientPoly;
            fn $f(self, rhs: &CoefficientPoly) -> CoefficientPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CoefficientPoly {
    type Output = CoefficientPoly;
    fn neg(self) -> CoefficientPoly {
        -&self
    }
}

/// Display order: ascending geometric exponent, then geometric monomial,
/// then the coefficient-ring part.
fn display_key(m: &Monomial) -> (u32, Monomial, u32, Monomial) {
    let (coef, geo) = m.split(Variable::is_coefficient);
    let g = geo.exponent_sum(|_| true);
    let c = coef.exponent_sum(|_| true);
    (g, geo, c, coef)
}

impl CoefficientPoly {
    /// Terms in display order.
    pub fn display_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| display_key(m));
        v
    }

    /// True when printing needs parentheses as a factor of a product.
    pub fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for CoefficientPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CoefficientPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
