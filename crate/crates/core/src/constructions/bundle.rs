use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{AlgebraMap, BasisElement, Element, GradedFreeAlgebra, MapKind};
use crate::fgl::{chern_variable, residue_universal, FormalGroupLaw};
use crate::symbolic::Variable;

use super::ConstructionError;

/// The rank-one algebra of a point.
pub fn point_algebra(law: &FormalGroupLaw) -> GradedFreeAlgebra {
    GradedFreeAlgebra::from_table(
        vec![BasisElement::new("1", 0)],
        0,
        vec![Element::basis(1, 0)],
        0,
        law.clone(),
        true,
    )
    .expect("point algebra")
    .with_point_class(0)
}

/// `P(E) -> X` with `zeta = c_1(O(1))`.
#[derive(Clone, Debug)]
pub struct ProjectiveBundleResult {
    pub algebra: Arc<GradedFreeAlgebra>,
    pub base: Arc<GradedFreeAlgebra>,
    pub zeta: Element,
    pub pullback: AlgebraMap,
    pub pushforward: AlgebraMap,
    pub chern: Vec<Element>,
    // index[s][b]: position of zeta^s * b in the total basis
    index: Vec<Vec<usize>>,
}

pub(super) fn power_label(name: &str, s: usize) -> String {
    match s {
        0 => "1".to_string(),
        1 => name.to_string(),
        _ => format!("{name}^{s}"),
    }
}

pub(super) fn join_label(left: &str, right: &str) -> String {
    match (left, right) {
        ("1", r) => r.to_string(),
        (l, "1") => l.to_string(),
        (l, r) => format!("{l}*{r}"),
    }
}

impl ProjectiveBundleResult {
    pub fn rank(&self) -> usize {
        self.chern.len()
    }

    pub fn index(&self, s: usize, b: usize) -> usize {
        self.index[s][b]
    }

    /// Splits an element as `sum_s zeta^s * p^*(gamma_s)`.
    pub fn components(&self, e: &Element) -> Vec<Element> {
        self.index
            .iter()
            .map(|row| {
                Element::from_coefficients(row.iter().map(|&k| e.coefficient(k).clone()).collect())
            })
            .collect()
    }

    pub fn from_components(&self, parts: &[Element]) -> Element {
        let mut out = self.algebra.zero();
        for (s, part) in parts.iter().enumerate() {
            for (b, c) in part.support() {
                out.add_to(self.index[s][b], c);
            }
        }
        out
    }

    pub fn pull(&self, x: &Element) -> Element {
        self.pullback.apply(x)
    }

    pub fn push(&self, x: &Element) -> Element {
        self.pushforward.apply(x)
    }

    /// `zeta^r + c_1 zeta^(r-1) + ... + c_r`, which should vanish.
    pub fn relation(&self) -> Element {
        let alg = &self.algebra;
        let r = self.rank();
        let mut out = alg.pow(&self.zeta, r as u32);
        for (k, c) in self.chern.iter().enumerate() {
            let t = alg.mul(&alg.pow(&self.zeta, (r - 1 - k) as u32), &self.pull(c));
            out += &t;
        }
        out
    }
}

/// Builds `A(P(E)) = A(X)[zeta]/(zeta^r + c_1 zeta^(r-1) + ... + c_r)` and
/// the push-forward through the residue formula.
pub fn projective_bundle(
    base: Arc<GradedFreeAlgebra>,
    chern: &[Element],
    zeta_name: &str,
) -> Result<ProjectiveBundleResult, ConstructionError> {
    let r = chern.len();
    if r == 0 {
        return Err(ConstructionError::Input("projective bundle of rank zero".into()));
    }
    for (k, c) in chern.iter().enumerate() {
        if c.rank() != base.rank() {
            return Err(ConstructionError::Input("Chern class from another algebra".into()));
        }
        if base.is_graded() && !base.is_homogeneous(c, k as i32 + 1) {
            return Err(ConstructionError::Input(format!(
                "c_{} is not homogeneous of degree {}",
                k + 1,
                k + 1
            )));
        }
    }
    let nb = base.rank();
    let dim = base.dimension() + r as u32 - 1;
    let law = base.law().with_cap(base.law().degree_cap().max(dim));

    let mut slots: Vec<(usize, usize)> = (0..r).flat_map(|s| (0..nb).map(move |b| (s, b))).collect();
    let deg = |&(s, b): &(usize, usize)| s as i32 + base.basis()[b].degree;
    slots.sort_by_key(|p| (deg(p), p.0, p.1));
    let mut index = vec![vec![0; nb]; r];
    for (k, &(s, b)) in slots.iter().enumerate() {
        index[s][b] = k;
    }
    let basis: Vec<BasisElement> = slots
        .iter()
        .map(|&(s, b)| {
            let bl = &base.basis()[b];
            BasisElement::new(join_label(&power_label(zeta_name, s), &bl.label), s as i32 + bl.degree)
        })
        .collect();
    let n = basis.len();

    // zeta^m as components over 1, zeta, ..., zeta^(r-1)
    let mut zpow: Vec<Vec<Element>> = Vec::new();
    for m in 0..r {
        let mut v = vec![base.zero(); r];
        v[m] = base.one();
        zpow.push(v);
    }
    for m in r..=2 * (r - 1) {
        let prev = &zpow[m - 1];
        let mut v = vec![base.zero(); r];
        for s in 0..r - 1 {
            v[s + 1] = prev[s].clone();
        }
        let top = &prev[r - 1];
        if !top.is_zero() {
            for (k, c) in chern.iter().enumerate() {
                v[r - 1 - k] -= &base.mul(c, top);
            }
        }
        zpow.push(v);
    }

    let to_total = |parts: &[Element]| -> Element {
        let mut out = Element::zero(n);
        for (s, part) in parts.iter().enumerate() {
            for (b, c) in part.support() {
                out.add_to(index[s][b], c);
            }
        }
        out
    };

    let algebra = GradedFreeAlgebra::from_products(
        basis,
        index[0][base.unit_index()],
        dim,
        law.clone(),
        |i, j| {
            let (s, a) = slots[i];
            let (t, b) = slots[j];
            let ab = base.product_ref(a, b);
            let parts: Vec<Element> = zpow[s + t].iter().map(|z| base.mul(z, ab)).collect();
            Ok(to_total(&parts))
        },
    )?;
    let mut algebra = algebra;
    if let Some(p) = base.point_class() {
        algebra = algebra.with_point_class(index[r - 1][p]);
    }
    let pull_images: Vec<Element> = (0..nb).map(|b| Element::basis(n, index[0][b])).collect();
    for (name, e) in base.names() {
        let img = to_total(&[e.clone()]);
        algebra.set_name(name, img);
    }
    let zeta = if r == 1 {
        // P(L) = X, where the relation reads zeta = -c_1
        to_total(&[-&chern[0]])
    } else {
        Element::basis(n, index[1][base.unit_index()])
    };
    algebra.set_name(zeta_name, zeta.clone());
    let algebra = Arc::new(algebra);

    // p_*(zeta^s) from the residue formula, evaluated in the base
    let assignment: BTreeMap<Variable, Element> = chern
        .iter()
        .enumerate()
        .map(|(k, c)| (chern_variable(k + 1), c.clone()))
        .collect();
    let mut push_zeta = Vec::with_capacity(r);
    for s in 0..r {
        let u = residue_universal(s as u32, r, &law, base.dimension())?;
        push_zeta.push(base.eval_poly(&u, &assignment)?);
    }
    let mut push_images = vec![base.zero(); n];
    for &(s, b) in &slots {
        push_images[index[s][b]] = base.mul(&push_zeta[s], &base.basis_element(b));
    }
    let pullback = AlgebraMap::new(base.clone(), algebra.clone(), pull_images, MapKind::RingHom)?;
    let pushforward = AlgebraMap::new(
        algebra.clone(),
        base.clone(),
        push_images,
        MapKind::ModuleMap {
            shift: -(r as i32 - 1),
        },
    )?;
    Ok(ProjectiveBundleResult {
        algebra,
        base,
        zeta,
        pullback,
        pushforward,
        chern: chern.to_vec(),
        index,
    })
}

/// `A(P^n)` with hyperplane class `name`.
pub fn projective_space(law: &FormalGroupLaw, n: u32, name: &str) -> Result<ProjectiveBundleResult, ConstructionError> {
    let pt = Arc::new(point_algebra(&law.with_cap(law.degree_cap().max(n))));
    let zero = vec![pt.zero(); n as usize + 1];
    projective_bundle(pt, &zero, name)
}
