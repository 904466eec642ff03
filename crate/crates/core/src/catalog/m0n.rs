use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{BasisElement, Element, GradedFreeAlgebra, Presentation};
use crate::fgl::{f_sum, Theory, Truncated};
use crate::symbolic::{CoefficientPoly, Monomial, Variable};

use super::{law_for, CatalogError};

/// The boundary divisors `D_S` of `M_{0,n}`, each indexed by the side `S`
/// that contains `n`. Generators are ordered by `|S|`, then
/// lexicographically, and named `x` followed by the elements of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetIndex {
    n: usize,
    masks: Vec<u32>,
    lookup: HashMap<u32, usize>,
}

impl SubsetIndex {
    pub fn new(n: usize) -> Self {
        let full = (1u32 << n) - 1;
        let top = 1u32 << (n - 1);
        let mut sets: Vec<Vec<usize>> = (0..full)
            .map(|m| m | top)
            .filter(|&m| m & top != 0)
            .filter(|m| (2..=n - 2).contains(&(m.count_ones() as usize)))
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        sets.sort();
        sets.dedup();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let masks: Vec<u32> = sets.iter().map(|s| s.iter().map(|i| 1u32 << i).sum()).collect();
        let lookup = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SubsetIndex { n, masks, lookup }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Elements of `S`, 1-based.
    pub fn subset(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|k| self.masks[i] >> k & 1 == 1).map(|k| k + 1).collect()
    }

    pub fn name(&self, i: usize) -> String {
        let digits: String = self.subset(i).iter().map(|k| k.to_string()).collect();
        format!("x{digits}")
    }

    /// The generator of the divisor separating `side` (1-based) from its
    /// complement.
    pub fn index_of(&self, side: &[usize]) -> Option<usize> {
        let full = (1u32 << self.n) - 1;
        let mut m = side.iter().try_fold(0u32, |acc, &k| {
            (1..=self.n).contains(&k).then_some(acc | 1 << (k - 1))
        })?;
        if m >> (self.n - 1) & 1 == 0 {
            m = full & !m;
        }
        self.lookup.get(&m).copied()
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.name(i) == name)
    }

    pub fn variable(&self, i: usize) -> Variable {
        Variable::new(self.name(i), 1)
    }

    /// `D_S` and `D_T` meet exactly when the sides nest or cover `[n]`.
    pub fn compatible(&self, i: usize, j: usize) -> bool {
        let (s, t) = (self.masks[i], self.masks[j]);
        let full = (1u32 << self.n) - 1;
        s & t == s || s & t == t || s | t == full || s & t == 0
    }

    /// Generators whose side contains `{a, b}` and misses `{c, d}`, or the
    /// reverse (1-based labels).
    pub fn separating(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<usize> {
        let bit = |k: usize| 1u32 << (k - 1);
        let (p, q) = (bit(a) | bit(b), bit(c) | bit(d));
        (0..self.len())
            .filter(|&i| {
                let m = self.masks[i];
                (m & p == p && m & q == 0) || (m & q == q && m & p == 0)
            })
            .collect()
    }
}

// sparse monomial in the generators, sorted by generator
type XMono = Vec<(usize, u32)>;

fn mono_degree(m: &XMono) -> usize {
    m.iter().map(|&(_, e)| e as usize).sum()
}

fn mono_mul(a: &XMono, b: &XMono) -> XMono {
    let mut out: XMono = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(g, e)), Some(&(h, f))) if g == h => {
                out.push((g, e + f));
                i += 1;
                j += 1;
            }
            (Some(&(g, e)), Some(&(h, _))) if g < h => {
                out.push((g, e));
                i += 1;
            }
            (Some(&(g, e)), None) => {
                out.push((g, e));
                i += 1;
            }
            (_, Some(&(h, f))) => {
                out.push((h, f));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn mono_label(index: &SubsetIndex, m: &XMono) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|&(g, e)| match e {
            1 => index.name(g),
            _ => format!("{}^{e}", index.name(g)),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Pivot preference: high powers first, then the larger monomial.
fn pivot_key(m: &XMono) -> (u32, &XMono) {
    (m.iter().map(|&(_, e)| e).max().unwrap_or(0), m)
}

// normal forms over the standard monomials, by standard id
type Normal = BTreeMap<usize, CoefficientPoly>;

#[derive(Clone)]
struct Row {
    lead: BTreeMap<usize, BigInt>,
    tail: Normal,
}

impl Row {
    fn axpy(&mut self, c: &BigInt, other: &Row) {
        for (k, v) in &other.lead {
            let slot = self.lead.entry(*k).or_insert_with(BigInt::zero);
            *slot += c * v;
            if slot.is_zero() {
                self.lead.remove(k);
            }
        }
        let cp = CoefficientPoly::constant(c.clone());
        add_normal(&mut self.tail, &cp, &other.tail);
    }

    fn negate(&mut self) {
        for v in self.lead.values_mut() {
            *v = -v.clone();
        }
        for v in self.tail.values_mut() {
            *v = -v.clone();
        }
    }
}

fn add_normal(acc: &mut Normal, c: &CoefficientPoly, v: &Normal) {
    for (k, p) in v {
        let slot = acc.entry(*k).or_insert_with(CoefficientPoly::zero);
        *slot += &(c * p);
        if slot.is_zero() {
            acc.remove(k);
        }
    }
}

/// `A(M_{0,n})` presented by boundary divisors, with the four-point
/// relations written with the formal group law.
#[derive(Clone, Debug)]
pub struct M0nRing {
    pub n: usize,
    pub theory: Theory,
    pub index: SubsetIndex,
    pub algebra: Arc<GradedFreeAlgebra>,
    pub presentation: Presentation,
    /// Relations among higher-degree classes met during elimination that
    /// the normal forms do not see; zero when the construction is exact.
    pub lost_relations: usize,
}

impl M0nRing {
    pub fn class(&self, side: &[usize]) -> Option<Element> {
        self.index.index_of(side).map(|i| self.algebra.class(&self.index.name(i)))
    }

    pub fn generator(&self, i: usize) -> Element {
        self.algebra.class(&self.index.name(i))
    }
}

/// The four-point relations `P(ab|cd) - P(ac|bd)` and `P(ab|cd) - P(ad|bc)`
/// with `P` the formal sum of the separating divisors, truncated above
/// the dimension.
fn f_relations(
    index: &SubsetIndex,
    law: &crate::fgl::FormalGroupLaw,
    dim: usize,
) -> Vec<CoefficientPoly> {
    let n = index.n();
    let vars: Vec<Variable> = (0..index.len()).map(|i| index.variable(i)).collect();
    let ring = Truncated::new(vars.clone(), dim as u32);
    let p = |a, b, c, d| {
        let xs: Vec<CoefficientPoly> = index
            .separating(a, b, c, d)
            .into_iter()
            .map(|i| CoefficientPoly::var(vars[i].clone()))
            .collect();
        f_sum(&ring, law, &xs)
    };
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    let base = p(a, b, c, d);
                    out.push(&base - &p(a, c, b, d));
                    out.push(&base - &p(a, d, b, c));
                }
            }
        }
    }
    out
}

/// Splits a relation into (x-monomial, coefficient) terms, dropping terms
/// that vanish because two divisors are disjoint.
fn split_terms(
    index: &SubsetIndex,
    names: &HashMap<String, usize>,
    p: &CoefficientPoly,
) -> Vec<(XMono, CoefficientPoly)> {
    let mut acc: BTreeMap<XMono, CoefficientPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (scalar, geometric) = m.split(|v| v.is_coefficient());
        let mut x: XMono = geometric.factors().iter().map(|(v, e)| (names[v.name()], *e)).collect();
        x.sort();
        if !admissible(index, &x, usize::MAX) {
            continue;
        }
        *acc.entry(x).or_insert_with(CoefficientPoly::zero) += &CoefficientPoly::term(c.clone(), scalar);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn admissible(index: &SubsetIndex, m: &XMono, dim: usize) -> bool {
    mono_degree(m) <= dim
        && m
            .iter()
            .enumerate()
            .all(|(k, &(g, _))| m[k + 1..].iter().all(|&(h, _)| index.compatible(g, h)))
}

/// The admissible monomials of each degree `0 ..= dim`.
fn admissible_monomials(index: &SubsetIndex, dim: usize) -> Vec<Vec<XMono>> {
    let mut out: Vec<Vec<XMono>> = vec![vec![Vec::new()]];
    for _ in 1..=dim {
        let mut next = Vec::new();
        for m in out.last().unwrap() {
            let last = m.last().map(|&(g, _)| g).unwrap_or(0);
            for g in last..index.len() {
                if !m.iter().all(|&(h, _)| index.compatible(g, h)) {
                    continue;
                }
                next.push(mono_mul(m, &vec![(g, 1)]));
            }
        }
        next.sort();
        next.dedup();
        out.push(next);
    }
    out
}

/// Largest `n` built without `allow_large`.
pub const M0N_DEFAULT_MAX: usize = 6;

/// Builds `A(M_{0,n})` for `4 <= n <= 9` by degree-wise elimination. The
/// cost grows quickly with `n`, so `n > 6` needs `allow_large`.
pub fn m0n_ring(theory: &Theory, n: usize, allow_large: bool) -> Result<M0nRing, CatalogError> {
    if !(4..=9).contains(&n) {
        return Err(CatalogError::Range(format!("n must lie in 4..=9, got {n}")));
    }
    if n > M0N_DEFAULT_MAX && !allow_large {
        return Err(CatalogError::Range(format!(
            "n = {n} is expensive; pass allow_large to build it"
        )));
    }
    let dim = n - 3;
    let law = law_for(theory, dim.max(1) as u32)?;
    let index = SubsetIndex::new(n);
    let names: HashMap<String, usize> = (0..index.len()).map(|i| (index.name(i), i)).collect();
    let polys = f_relations(&index, &law, dim);
    let relations: Vec<Vec<(XMono, CoefficientPoly)>> = polys.iter().map(|p| split_terms(&index, &names, p)).collect();
    let monos = admissible_monomials(&index, dim);
    // nested sides {k+1, .., n} for k = 2 .. n-2 meet in one point
    let point: XMono = (2..=n - 2)
        .map(|k| (index.index_of(&(k + 1..=n).collect::<Vec<_>>()).expect("boundary divisor"), 1))
        .collect::<BTreeMap<_, _>>()
        .into_iter()
        .collect();

    let mut standard: Vec<XMono> = Vec::new();
    let mut nf: HashMap<XMono, Normal> = HashMap::new();
    let mut lost = 0;
    for d in (0..=dim).rev() {
        let cols = &monos[d];
        let col_of: HashMap<&XMono, usize> = cols.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
        let mut deferred: Vec<Row> = Vec::new();
        let protected = |k: usize| d == dim && cols[k] == point;
        let choose = |row: &Row| {
            row.lead
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(k, _)| *k)
                .max_by(|a, b| {
                    (!protected(*a), pivot_key(&cols[*a])).cmp(&(!protected(*b), pivot_key(&cols[*b])))
                })
        };
        let insert = |mut row: Row, pivots: &mut BTreeMap<usize, Row>, lost: &mut usize| -> Option<Row> {
            let hits: Vec<(usize, BigInt)> = row
                .lead
                .iter()
                .filter(|(k, _)| pivots.contains_key(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect();
            for (k, v) in hits {
                row.axpy(&-v, &pivots[&k]);
            }
            if row.lead.is_empty() {
                if !row.tail.is_empty() {
                    *lost += 1;
                }
                return None;
            }
            let Some(p) = choose(&row) else {
                return Some(row);
            };
            if row.lead[&p].is_negative() {
                row.negate();
            }
            let users: Vec<usize> = pivots.iter().filter(|(_, r)| r.lead.contains_key(&p)).map(|(k, _)| *k).collect();
            for u in users {
                let c = -pivots[&u].lead[&p].clone();
                let mut r = pivots.remove(&u).unwrap();
                r.axpy(&c, &row);
                pivots.insert(u, r);
            }
            pivots.insert(p, row);
            None
        };
        if d > 0 {
            for q in &monos[d - 1] {
                for rel in &relations {
                    let mut row = Row {
                        lead: BTreeMap::new(),
                        tail: Normal::new(),
                    };
                    for (m, c) in rel {
                        let pm = mono_mul(q, m);
                        if !admissible(&index, &pm, dim) {
                            continue;
                        }
                        if mono_degree(&pm) == d {
                            let v = c.constant_value().expect("integral leading coefficient");
                            let slot = row.lead.entry(col_of[&pm]).or_insert_with(BigInt::zero);
                            *slot += v;
                            if slot.is_zero() {
                                row.lead.remove(&col_of[&pm]);
                            }
                        } else {
                            add_normal(&mut row.tail, c, &nf[&pm]);
                        }
                    }
                    if row.lead.is_empty() && row.tail.is_empty() {
                        continue;
                    }
                    if let Some(r) = insert(row, &mut pivots, &mut lost) {
                        deferred.push(r);
                    }
                }
            }
        }
        loop {
            let before = deferred.len();
            let mut again = Vec::new();
            for row in std::mem::take(&mut deferred) {
                if let Some(r) = insert(row, &mut pivots, &mut lost) {
                    again.push(r);
                }
            }
            deferred = again;
            if deferred.is_empty() || deferred.len() == before {
                break;
            }
        }
        if !deferred.is_empty() {
            return Err(CatalogError::NoUnitPivot(d));
        }
        for (k, m) in cols.iter().enumerate() {
            if !pivots.contains_key(&k) {
                let id = standard.len();
                standard.push(m.clone());
                nf.insert(m.clone(), BTreeMap::from([(id, CoefficientPoly::one())]));
            }
        }
        for (p, row) in &pivots {
            let mut v = Normal::new();
            for (k, c) in &row.lead {
                if k != p {
                    let s = &nf[&cols[*k]];
                    add_normal(&mut v, &CoefficientPoly::constant(-c.clone()), s);
                }
            }
            add_normal(&mut v, &-CoefficientPoly::one(), &row.tail);
            nf.insert(cols[*p].clone(), v);
        }
    }

    // basis by degree, then monomial
    let mut order: Vec<usize> = (0..standard.len()).collect();
    order.sort_by(|&a, &b| (mono_degree(&standard[a]), &standard[a]).cmp(&(mono_degree(&standard[b]), &standard[b])));
    let mut position = vec![0; standard.len()];
    for (k, &id) in order.iter().enumerate() {
        position[id] = k;
    }
    let rank = order.len();
    let to_element = |v: &Normal| Element::from_sparse(rank, v.iter().map(|(id, c)| (position[*id], c.clone())));
    let basis: Vec<BasisElement> = order
        .iter()
        .map(|&id| BasisElement::new(mono_label(&index, &standard[id]), mono_degree(&standard[id]) as i32))
        .collect();
    let unit = position[order.iter().copied().find(|&id| standard[id].is_empty()).expect("unit")];
    let table_mono = |i: usize, j: usize| mono_mul(&standard[order[i]], &standard[order[j]]);
    let mut algebra = GradedFreeAlgebra::from_products(basis, unit, dim as u32, law.clone(), |i, j| {
        let m = table_mono(i, j);
        Ok(if admissible(&index, &m, dim) {
            to_element(&nf[&m])
        } else {
            Element::zero(rank)
        })
    })?;
    let pt = to_element(&nf[&point]);
    match pt.support().collect::<Vec<_>>().as_slice() {
        [(k, c)] if c.is_one() => algebra = algebra.with_point_class(*k),
        _ => {
            return Err(CatalogError::Mismatch(format!(
                "the point class is {}, not a basis element",
                algebra.format(&pt)
            )))
        }
    }
    for g in 0..index.len() {
        algebra.set_name(&index.name(g), to_element(&nf[&vec![(g, 1)]]));
    }

    let mut rels = polys;
    for i in 0..index.len() {
        for j in i + 1..index.len() {
            if !index.compatible(i, j) {
                rels.push(CoefficientPoly::term(
                    1,
                    Monomial::from_pairs([(index.variable(i), 1), (index.variable(j), 1)]),
                ));
            }
        }
    }
    let gens = (0..index.len()).map(|i| (index.name(i), 1)).collect();
    let presentation = Presentation::new(theory.scalar_ring(), gens, rels)?;
    Ok(M0nRing {
        n,
        theory: theory.clone(),
        index,
        algebra: Arc::new(algebra),
        presentation,
        lost_relations: lost,
    })
}

/// The formal sum of the divisors separating `{a, b}` from `{c, d}`; by the
/// four-point relation it does not depend on the pairing.
pub fn keel_fundamental_sum(ring: &M0nRing, a: usize, b: usize, c: usize, d: usize) -> Element {
    let alg = &ring.algebra;
    let xs: Vec<Element> = ring
        .index
        .separating(a, b, c, d)
        .into_iter()
        .map(|i| ring.generator(i))
        .collect();
    f_sum(alg.as_ref(), alg.law(), &xs)
}
