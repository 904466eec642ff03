use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::fgl::{FormalGroupLaw, FormalRing, Specialization};
use crate::symbolic::{CoefficientPoly, Variable};

use super::{AlgebraError, Element};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i32) -> Self {
        BasisElement {
            label: label.into(),
            degree,
        }
    }
}

/// A commutative algebra, free of finite rank over the coefficient ring,
/// stored through its structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeAlgebra {
    basis: Vec<BasisElement>,
    unit: usize,
    // products b_i b_j for j <= i, packed row by row
    table: Vec<Element>,
    dimension: u32,
    law: FormalGroupLaw,
    point_class: Option<usize>,
    graded: bool,
    names: Vec<(String, Element)>,
}

fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl GradedFreeAlgebra {
    /// Builds the table by evaluating `product(i, j)` for `j <= i`, in
    /// parallel. The grading and unit are validated.
    pub fn from_products<F>(
        basis: Vec<BasisElement>,
        unit: usize,
        dimension: u32,
        law: FormalGroupLaw,
        product: F,
    ) -> Result<Self, AlgebraError>
    where
        F: Fn(usize, usize) -> Result<Element, AlgebraError> + Sync,
    {
        let n = basis.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
        let table = pairs
            .par_iter()
            .map(|&(i, j)| product(i, j))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(basis, unit, table, dimension, law, true)
    }

    /// Takes a packed lower-triangular table as produced by `packed_table`.
    pub fn from_table(
        basis: Vec<BasisElement>,
        unit: usize,
        table: Vec<Element>,
        dimension: u32,
        law: FormalGroupLaw,
        graded: bool,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        if unit >= n {
            return Err(AlgebraError::Invalid("unit index out of range".into()));
        }
        if table.len() != n * (n + 1) / 2 || table.iter().any(|e| e.rank() != n) {
            return Err(AlgebraError::Invalid("structure table has the wrong shape".into()));
        }
        if let Some(b) = basis.iter().find(|b| b.degree < 0 || b.degree > dimension as i32) {
            return Err(AlgebraError::Invalid(format!(
                "basis element {} has degree {} outside 0..={dimension}",
                b.label, b.degree
            )));
        }
        let alg = GradedFreeAlgebra {
            basis,
            unit,
            table,
            dimension,
            law,
            point_class: None,
            graded,
            names: Vec::new(),
        };
        for i in 0..n {
            if alg.product_ref(unit, i) != &Element::basis(n, i) {
                return Err(AlgebraError::Invalid(format!(
                    "unit does not fix {}",
                    alg.basis[i].label
                )));
            }
        }
        if graded {
            for i in 0..n {
                for j in 0..=i {
                    let d = alg.basis[i].degree + alg.basis[j].degree;
                    if !alg.is_homogeneous(alg.product_ref(i, j), d) {
                        return Err(AlgebraError::Grading(format!(
                            "{} * {} is not homogeneous of degree {d}",
                            alg.basis[i].label, alg.basis[j].label
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Registers a named class usable in expressions and labels.
    pub fn with_name(mut self, name: &str, e: Element) -> Self {
        self.set_name(name, e);
        self
    }

    pub fn set_name(&mut self, name: &str, e: Element) {
        assert_eq!(e.rank(), self.rank());
        match self.names.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = e,
            None => self.names.push((name.to_string(), e)),
        }
    }

    pub fn with_point_class(mut self, index: usize) -> Self {
        self.point_class = Some(index);
        self
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn total_rank(&self) -> usize {
        self.rank()
    }

    pub fn graded_rank(&self, k: i32) -> usize {
        self.basis.iter().filter(|b| b.degree == k).count()
    }

    /// Ranks in degrees `0..=dimension`.
    pub fn rank_vector(&self) -> Vec<usize> {
        (0..=self.dimension as i32).map(|k| self.graded_rank(k)).collect()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn point_class(&self) -> Option<usize> {
        self.point_class
    }

    pub fn names(&self) -> &[(String, Element)] {
        &self.names
    }

    pub fn named(&self, name: &str) -> Option<&Element> {
        self.names.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    /// Named class, panicking with the name if it is missing.
    pub fn class(&self, name: &str) -> Element {
        self.named(name)
            .unwrap_or_else(|| panic!("no class named {name}"))
            .clone()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.rank())
    }

    pub fn one(&self) -> Element {
        Element::basis(self.rank(), self.unit)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.rank(), i)
    }

    pub fn scalar(&self, c: CoefficientPoly) -> Element {
        self.one().scale(&c)
    }

    pub(crate) fn product_ref(&self, i: usize, j: usize) -> &Element {
        &self.table[packed(i, j)]
    }

    pub fn product(&self, i: usize, j: usize) -> Element {
        self.product_ref(i, j).clone()
    }

    /// The packed table (`b_i b_j` for `j <= i`, row-major).
    pub fn packed_table(&self) -> &[Element] {
        &self.table
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.rank();
        let mut out = Element::zero(n);
        for (i, ai) in a.support() {
            for (j, bj) in b.support() {
                let c = ai * bj;
                if c.is_zero() {
                    continue;
                }
                for (k, t) in self.product_ref(i, j).support() {
                    out.add_to(k, &(&c * t));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, e: u32) -> Element {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// True if every coordinate `c_i` is homogeneous of degree `d - deg b_i`.
    pub fn is_homogeneous(&self, e: &Element, d: i32) -> bool {
        e.support()
            .all(|(i, c)| c.is_homogeneous_of(d - self.basis[i].degree))
    }

    /// The total degree of a nonzero homogeneous element.
    pub fn degree_of(&self, e: &Element) -> Option<i32> {
        let (i, c) = e.support().next()?;
        let d = c.homogeneous_degree()? + self.basis[i].degree;
        self.is_homogeneous(e, d).then_some(d)
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, e: &Element, d: i32) -> Element {
        Element::from_coefficients(
            e.coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| c.homogeneous_component(d - self.basis[i].degree))
                .collect(),
        )
    }

    /// Drops components of total degree above `d`.
    pub fn truncate(&self, e: &Element, d: i32) -> Element {
        Element::from_coefficients(
            e.coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let top = d - self.basis[i].degree;
                    c.filter(|m| m.degree() <= top)
                })
                .collect(),
        )
    }

    /// Evaluates a polynomial whose geometric variables are assigned
    /// classes; coefficient variables act as scalars.
    pub fn eval_poly(
        &self,
        p: &CoefficientPoly,
        assignment: &BTreeMap<Variable, Element>,
    ) -> Result<Element, AlgebraError> {
        let mut powers: BTreeMap<(Variable, u32), Element> = BTreeMap::new();
        let mut out = self.zero();
        for (m, c) in p.terms() {
            let (scalar, geometric) = m.split(|v| v.is_coefficient());
            let mut acc = self.one().scale(&CoefficientPoly::term(c.clone(), scalar));
            for (v, e) in geometric.factors() {
                let base = assignment
                    .get(v)
                    .ok_or_else(|| AlgebraError::UnknownName(v.name().to_string()))?;
                let pw = powers
                    .entry((v.clone(), *e))
                    .or_insert_with(|| self.pow(base, *e))
                    .clone();
                acc = self.mul(&acc, &pw);
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Assignment sending each named class's variable (declared with its
    /// degree) to the class itself.
    pub fn name_assignment(&self) -> BTreeMap<Variable, Element> {
        self.names
            .iter()
            .map(|(n, e)| {
                let d = self.degree_of(e).unwrap_or(1);
                (Variable::new(n, d), e.clone())
            })
            .collect()
    }

    /// Text rendering such as `4*alpha^3` or `2*e - a11*z`.
    pub fn format(&self, e: &Element) -> String {
        let mut out = String::new();
        for (i, c) in e.support() {
            let label = &self.basis[i].label;
            let neg = c.len() == 1 && c.terms().next().is_some_and(|(_, k)| k.sign() == num_bigint::Sign::Minus);
            let c_abs = if neg { -c } else { c.clone() };
            let body = if label == "1" {
                if c_abs.needs_parens() {
                    format!("({c_abs})")
                } else {
                    c_abs.to_string()
                }
            } else if c_abs.is_one() {
                label.clone()
            } else if c_abs.needs_parens() {
                format!("({c_abs})*{label}")
            } else {
                format!("{c_abs}*{label}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let _ = write!(out, "{body}");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Coefficient of the point class, for top-degree elements.
    pub fn degree_functional(&self, e: &Element) -> Option<CoefficientPoly> {
        self.point_class.map(|p| e.coefficient(p).clone())
    }

    pub fn specialize(&self, spec: &Specialization) -> Result<Self, AlgebraError> {
        let sub = |c: &CoefficientPoly| spec.apply(c);
        let table = self
            .table
            .iter()
            .map(|e| e.map_coefficients(sub))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = GradedFreeAlgebra {
            basis: self.basis.clone(),
            unit: self.unit,
            table,
            dimension: self.dimension,
            law: self.law.specialize(spec)?,
            point_class: self.point_class,
            graded: self.graded && !spec.waives_grading(),
            names: Vec::new(),
        };
        for (n, e) in &self.names {
            out.names.push((n.clone(), e.map_coefficients(sub)?));
        }
        Ok(out)
    }

    pub fn specialize_element(&self, e: &Element, spec: &Specialization) -> Result<Element, AlgebraError> {
        Ok(e.map_coefficients(|c| spec.apply(c))?)
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all triples `i <= j <= k`.
    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.rank();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (i..n).flat_map(move |j| (j..n).map(move |k| (i, j, k))))
            .collect();
        let bad = triples.par_iter().find_any(|&&(i, j, k)| {
            let l = self.mul(self.product_ref(i, j), &self.basis_element(k));
            let r = self.mul(&self.basis_element(i), self.product_ref(j, k));
            l != r
        });
        match bad {
            Some(&(i, j, k)) => Err(AlgebraError::Associativity(format!(
                "({} {}) {}",
                self.basis[i].label, self.basis[j].label, self.basis[k].label
            ))),
            None => Ok(()),
        }
    }

    /// Assembles an algebra from raw parts; used by deserialization.
    pub(crate) fn from_parts(
        basis: Vec<BasisElement>,
        unit: usize,
        table: Vec<Element>,
        dimension: u32,
        law: FormalGroupLaw,
        graded: bool,
        point_class: Option<usize>,
        names: Vec<(String, Element)>,
    ) -> Result<Self, AlgebraError> {
        let mut alg = Self::from_table(basis, unit, table, dimension, law, graded)?;
        alg.point_class = point_class;
        alg.names = names;
        Ok(alg)
    }
}

impl FormalRing for GradedFreeAlgebra {
    type Elem = Element;

    fn zero(&self) -> Element {
        GradedFreeAlgebra::zero(self)
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }

    fn neg(&self, a: &Element) -> Element {
        -a
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        GradedFreeAlgebra::mul(self, a, b)
    }

    fn scale(&self, a: &Element, c: &CoefficientPoly) -> Element {
        a.scale(c)
    }

    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }

    fn nilpotency_bound(&self) -> u32 {
        self.dimension
    }
}

/// `A (x) B` with basis the pairs; returns the two inclusions' images of
/// the respective bases alongside.
pub fn tensor_product(
    a: &GradedFreeAlgebra,
    b: &GradedFreeAlgebra,
) -> Result<GradedFreeAlgebra, AlgebraError> {
    if a.law.theory() != b.law.theory() {
        return Err(AlgebraError::TheoryMismatch(
            a.law.theory().name().into(),
            b.law.theory().name().into(),
        ));
    }
    if let Some((n, _)) = a.names.iter().find(|(n, _)| b.named(n).is_some()) {
        return Err(AlgebraError::Invalid(format!("class name {n} used by both factors")));
    }
    let nb = b.rank();
    let idx = |i: usize, j: usize| i * nb + j;
    let mut pairs: Vec<(usize, usize)> = (0..a.rank())
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .collect();
    let deg = |&(i, j): &(usize, usize)| a.basis[i].degree + b.basis[j].degree;
    pairs.sort_by_key(|p| (deg(p), p.0, p.1));
    let mut pos = vec![0; a.rank() * nb];
    for (k, p) in pairs.iter().enumerate() {
        pos[idx(p.0, p.1)] = k;
    }
    let basis: Vec<BasisElement> = pairs
        .iter()
        .map(|&(i, j)| {
            let (la, lb) = (&a.basis[i].label, &b.basis[j].label);
            let label = match (la.as_str(), lb.as_str()) {
                ("1", _) => lb.clone(),
                (_, "1") => la.clone(),
                _ => format!("{la}*{lb}"),
            };
            BasisElement::new(label, a.basis[i].degree + b.basis[j].degree)
        })
        .collect();
    let n = basis.len();
    let embed = |x: &Element, y: &Element| -> Element {
        let mut out = Element::zero(n);
        for (i, c) in x.support() {
            for (j, d) in y.support() {
                out.add_to(pos[idx(i, j)], &(c * d));
            }
        }
        out
    };
    let unit = pos[idx(a.unit, b.unit)];
    let law = if a.law.degree_cap() >= b.law.degree_cap() {
        a.law.with_cap(a.dimension + b.dimension)
    } else {
        b.law.with_cap(a.dimension + b.dimension)
    };
    let mut out = GradedFreeAlgebra::from_products(
        basis,
        unit,
        a.dimension + b.dimension,
        law,
        |s, t| {
            let (i, j) = pairs[s];
            let (k, l) = pairs[t];
            Ok(embed(a.product_ref(i, k), b.product_ref(j, l)))
        },
    )?;
    out.graded = a.graded && b.graded;
    for (name, e) in &a.names {
        out.names.push((name.clone(), embed(e, &b.one())));
    }
    for (name, e) in &b.names {
        out.names.push((name.clone(), embed(&a.one(), e)));
    }
    if let (Some(p), Some(q)) = (a.point_class, b.point_class) {
        out.point_class = Some(pos[idx(p, q)]);
    }
    Ok(out)
}
