use std::sync::Arc;

use crate::algebra::{
    check_projection_formula, AlgebraError, AlgebraMap, BasisElement, Element, GradedFreeAlgebra, MapKind,
};
use crate::algebra::Presentation;
use crate::fgl::formal_inverse;
use crate::symbolic::{CoefficientPoly, Variable};

use super::bundle::{projective_bundle, ProjectiveBundleResult};
use super::surjective::as_poly;
use super::ConstructionError;

/// Input of a blowup along a smooth center `i: Z -> X` of codimension `r`.
#[derive(Clone, Debug)]
pub struct BlowupData {
    pub ambient: Arc<GradedFreeAlgebra>,
    pub center: Arc<GradedFreeAlgebra>,
    pub i_pull: AlgebraMap,
    pub i_push: AlgebraMap,
    /// `c_1 .. c_r` of the normal bundle, in `A(Z)`.
    pub normal_chern: Vec<Element>,
    /// Name of the relative hyperplane class of `E = P(N)`.
    pub zeta_name: String,
    /// Labels of `j_*(zeta^s b)` for `s <= r-2`, `s`-major; generated when
    /// absent.
    pub exceptional_labels: Option<Vec<String>>,
    /// Classes `j_*(zeta^s p^* z)` to register under a name.
    pub pushforward_names: Vec<(String, usize, Element)>,
}

impl BlowupData {
    pub fn new(
        ambient: Arc<GradedFreeAlgebra>,
        center: Arc<GradedFreeAlgebra>,
        i_pull_images: Vec<Element>,
        i_push_images: Vec<Element>,
        normal_chern: Vec<Element>,
    ) -> Result<Self, ConstructionError> {
        let r = normal_chern.len() as i32;
        let i_pull = AlgebraMap::new(ambient.clone(), center.clone(), i_pull_images, MapKind::RingHom)?;
        let i_push = AlgebraMap::new(
            center.clone(),
            ambient.clone(),
            i_push_images,
            MapKind::ModuleMap { shift: r },
        )?;
        Ok(BlowupData {
            ambient,
            center,
            i_pull,
            i_push,
            normal_chern,
            zeta_name: "zeta".into(),
            exceptional_labels: None,
            pushforward_names: Vec::new(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.exceptional_labels = Some(labels);
        self
    }

    /// Names `j_*(zeta^s p^* z)` in the blowup.
    pub fn with_pushforward_name(mut self, name: &str, s: usize, z: Element) -> Self {
        self.pushforward_names.push((name.to_string(), s, z));
        self
    }

    pub fn codimension(&self) -> usize {
        self.normal_chern.len()
    }

    /// The checks every blowup input must pass: `r >= 2`, `i^*` a ring
    /// map, projection formula, and `i^* i_* 1 = c_r`.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let r = self.codimension();
        if r < 2 {
            return Err(ConstructionError::Input(format!("codimension {r} is below 2")));
        }
        self.i_pull.check_ring_hom()?;
        check_projection_formula(&self.i_pull, &self.i_push)?;
        let z = &self.center;
        let self_int = self.i_pull.apply(&self.i_push.apply(&z.one()));
        if self_int != self.normal_chern[r - 1] {
            return Err(ConstructionError::SelfIntersection(format!(
                "i^* i_* 1 = {} but c_{r} = {}",
                z.format(&self_int),
                z.format(&self.normal_chern[r - 1])
            )));
        }
        Ok(())
    }
}

/// The ring of the blowup with its structure maps.
#[derive(Clone, Debug)]
pub struct BlowupResult {
    pub algebra: Arc<GradedFreeAlgebra>,
    pub data: BlowupData,
    pub exceptional: ProjectiveBundleResult,
    pub pi_pull: AlgebraMap,
    pub j_push: AlgebraMap,
    /// `j_*(1)`.
    pub exceptional_divisor: Element,
    /// `chi(zeta)` in `A(E)`.
    pub chi_zeta: Element,
    /// `c_{r-1}(Q)` in `A(E)` for the excess bundle `Q`.
    pub excess_class: Element,
    /// The normal classes behind `excess_class`; equal to the input ones
    /// unless the relation on `E` forces a correction.
    pub normal_chern: Vec<Element>,
}

/// Rewrites `j_*(gamma)` in the blowup basis, eliminating the top
/// `zeta`-coefficient with the excess relation until it vanishes.
fn push_j(
    e: &ProjectiveBundleResult,
    data: &BlowupData,
    excess: &Element,
    gamma: &Element,
    n_bl: usize,
    nx: usize,
) -> Result<Element, ConstructionError> {
    let r = e.rank();
    let ealg = &e.algebra;
    let nz = data.center.rank();
    let mut g = gamma.clone();
    let mut x_part = data.ambient.zero();
    let mut passes = 0;
    loop {
        let parts = e.components(&g);
        let theta = &parts[r - 1];
        if theta.is_zero() {
            let mut out = Element::zero(n_bl);
            for (i, c) in x_part.support() {
                out.add_to(i, c);
            }
            for (s, part) in parts.iter().enumerate().take(r - 1) {
                for (b, c) in part.support() {
                    out.add_to(nx + s * nz + b, c);
                }
            }
            return Ok(out);
        }
        passes += 1;
        if passes > ealg.dimension() as usize + 2 {
            return Err(ConstructionError::Reduction(
                "top coefficient did not vanish".into(),
            ));
        }
        g -= &ealg.mul(excess, &e.pull(theta));
        x_part += &data.i_push.apply(theta);
    }
}

/// `sum_m c_{k-m} u^m`, the degree `k` part of `c(p^* N) / (1 - u)`.
fn quotient_chern(e: &ProjectiveBundleResult, normal: &[Element], u: &Element, k: usize) -> Element {
    let ealg = &e.algebra;
    let mut out = ealg.zero();
    let mut upow = ealg.one();
    for m in 0..=k {
        let c = if m == k { ealg.one() } else { e.pull(&normal[k - m - 1]) };
        out += &ealg.mul(&c, &upow);
        upow = ealg.mul(&upow, u);
    }
    out
}

/// `c_{r-1}(Q)` for `Q = p^* N / O(-1)`.
fn excess_class(e: &ProjectiveBundleResult, normal: &[Element], u: &Element) -> Element {
    quotient_chern(e, normal, u, normal.len() - 1)
}

/// Normal classes compatible with the relation on `E`: starting from
/// `normal`, corrects `c_1 .. c_r` until `c_r(Q) = 0` holds in `A(E)`.
/// Over an additive law the input is returned unchanged.
fn consistent_normal_chern(
    e: &ProjectiveBundleResult,
    normal: &[Element],
    u: &Element,
) -> Result<Vec<Element>, ConstructionError> {
    let r = normal.len();
    let mut c = normal.to_vec();
    for _ in 0..=e.algebra.dimension() as usize + r {
        let parts = e.components(&quotient_chern(e, &c, u, r));
        if parts.iter().all(Element::is_zero) {
            return Ok(c);
        }
        // the zeta^s coefficient of c_r(Q) is c_{r-s} plus higher terms
        for (s, part) in parts.iter().enumerate() {
            c[r - s - 1] -= part;
        }
    }
    Err(ConstructionError::Reduction("normal classes did not stabilize".into()))
}

/// The full presentation: generators `pi^*A(X)` and `j_*A(E)` with
/// products from relations (i)-(iii) and the excess relation.
pub fn blowup_full(data: BlowupData) -> Result<BlowupResult, ConstructionError> {
    data.validate()?;
    let x = data.ambient.clone();
    let z = data.center.clone();
    let r = data.codimension();
    let law = x.law().clone();
    let center_law = z.law().with_cap(law.degree_cap());
    let zc = if *z.law() == center_law {
        z.clone()
    } else {
        Arc::new(relabel_law(&z, &center_law)?)
    };
    let e = projective_bundle(zc, &data.normal_chern, &data.zeta_name)?;
    let ealg = e.algebra.clone();
    let chi = formal_inverse(ealg.as_ref(), ealg.law(), &e.zeta);
    let u = -&chi;
    let normal = consistent_normal_chern(&e, &data.normal_chern, &u)?;
    if normal[r - 1] != data.normal_chern[r - 1] {
        return Err(ConstructionError::SelfIntersection(format!(
            "the relation on E forces c_{r} = {}",
            z.format(&normal[r - 1])
        )));
    }
    let excess = excess_class(&e, &normal, &u);

    let nx = x.rank();
    let nz = z.rank();
    let mut basis: Vec<BasisElement> = x.basis().to_vec();
    let labels = match &data.exceptional_labels {
        Some(l) if l.len() == (r - 1) * nz => l.clone(),
        Some(_) => return Err(ConstructionError::Input("wrong number of exceptional labels".into())),
        None => (0..r - 1)
            .flat_map(|s| {
                let zl = &z;
                let zn = &data.zeta_name;
                (0..nz).map(move |b| {
                    let bl = &zl.basis()[b].label;
                    let inner = match (s, bl.as_str()) {
                        (0, l) => l.to_string(),
                        (1, "1") => zn.clone(),
                        (1, l) => format!("{zn}*{l}"),
                        (s, "1") => format!("{zn}^{s}"),
                        (s, l) => format!("{zn}^{s}*{l}"),
                    };
                    format!("j({inner})")
                })
            })
            .collect(),
    };
    for s in 0..r - 1 {
        for b in 0..nz {
            basis.push(BasisElement::new(
                labels[s * nz + b].clone(),
                1 + s as i32 + z.basis()[b].degree,
            ));
        }
    }
    let n = basis.len();
    // the E-class behind each exceptional basis element
    let e_class = |k: usize| -> Element {
        let s = (k - nx) / nz;
        let b = (k - nx) % nz;
        ealg.basis_element(e.index(s, b))
    };
    let pj = |g: &Element| {
        push_j(&e, &data, &excess, g, n, nx).map_err(|err| AlgebraError::Invalid(err.to_string()))
    };
    let embed_x = |a: &Element| -> Element {
        let mut out = Element::zero(n);
        for (i, c) in a.support() {
            out.add_to(i, c);
        }
        out
    };
    let algebra = GradedFreeAlgebra::from_products(basis, x.unit_index(), x.dimension(), law, |i, j| {
        match (i < nx, j < nx) {
            (true, true) => Ok(embed_x(x.product_ref(i, j))),
            (false, false) => {
                let g = ealg.mul(&ealg.mul(&e_class(i), &e_class(j)), &chi);
                pj(&g)
            }
            (xi, _) => {
                let (a, k) = if xi { (i, j) } else { (j, i) };
                let restricted = e.pull(&data.i_pull.apply(&x.basis_element(a)));
                pj(&ealg.mul(&e_class(k), &restricted))
            }
        }
    })?;
    let mut algebra = algebra;
    if let Some(p) = x.point_class() {
        algebra = algebra.with_point_class(p);
    }
    for (name, v) in x.names() {
        algebra.set_name(name, embed_x(v));
    }
    for (name, s, zc) in &data.pushforward_names {
        let g = ealg.mul(&ealg.pow(&e.zeta, *s as u32), &e.pull(zc));
        algebra.set_name(name, push_j(&e, &data, &excess, &g, n, nx)?);
    }
    let algebra = Arc::new(algebra);
    let pi_images: Vec<Element> = (0..nx).map(|i| Element::basis(n, i)).collect();
    let pi_pull = AlgebraMap::new(x.clone(), algebra.clone(), pi_images, MapKind::RingHom)?;
    let j_images = (0..ealg.rank())
        .map(|k| push_j(&e, &data, &excess, &ealg.basis_element(k), n, nx))
        .collect::<Result<Vec<_>, _>>()?;
    let j_push = AlgebraMap::new(ealg.clone(), algebra.clone(), j_images, MapKind::ModuleMap { shift: 1 })?;
    let exceptional_divisor = j_push.apply(&ealg.one());
    Ok(BlowupResult {
        algebra,
        data,
        exceptional: e,
        pi_pull,
        j_push,
        exceptional_divisor,
        chi_zeta: chi,
        excess_class: excess,
        normal_chern: normal,
    })
}

fn relabel_law(
    z: &GradedFreeAlgebra,
    law: &crate::fgl::FormalGroupLaw,
) -> Result<GradedFreeAlgebra, ConstructionError> {
    let mut out = GradedFreeAlgebra::from_table(
        z.basis().to_vec(),
        z.unit_index(),
        z.packed_table().to_vec(),
        z.dimension(),
        law.clone(),
        z.is_graded(),
    )?;
    if let Some(p) = z.point_class() {
        out = out.with_point_class(p);
    }
    for (n, e) in z.names() {
        out.set_name(n, e.clone());
    }
    Ok(out)
}

impl BlowupResult {
    pub fn pi(&self, a: &Element) -> Element {
        self.pi_pull.apply(a)
    }

    /// `j_*(gamma)` for any `gamma` in `A(E)`.
    pub fn push_j(&self, gamma: &Element) -> Result<Element, ConstructionError> {
        push_j(
            &self.exceptional,
            &self.data,
            &self.excess_class,
            gamma,
            self.algebra.rank(),
            self.data.ambient.rank(),
        )
    }

    pub fn codimension(&self) -> usize {
        self.data.codimension()
    }
}

/// Outcome of re-deriving each relation family on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupReport {
    pub families: Vec<(String, bool)>,
}

impl BlowupReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|(_, ok)| *ok)
    }
}

/// Re-evaluates relations (i)-(iv), the rank formula and associativity.
pub fn verify_blowup_axioms(res: &BlowupResult) -> BlowupReport {
    let bl = &res.algebra;
    let x = &res.data.ambient;
    let z = &res.data.center;
    let e = &res.exceptional;
    let ealg = &e.algebra;
    let mut families = Vec::new();

    let mut ok = true;
    for i in 0..x.rank() {
        for j in 0..=i {
            let lhs = bl.mul(&res.pi(&x.basis_element(i)), &res.pi(&x.basis_element(j)));
            ok &= lhs == res.pi(x.product_ref(i, j));
        }
    }
    families.push(("(i) intersection on X".to_string(), ok));

    let mut ok = true;
    for a in 0..x.rank() {
        let restricted = e.pull(&res.data.i_pull.apply(&x.basis_element(a)));
        for k in 0..ealg.rank() {
            let g = ealg.basis_element(k);
            let lhs = bl.mul(&res.pi(&x.basis_element(a)), &res.j_push.apply(&g));
            let rhs = res.push_j(&ealg.mul(&g, &restricted));
            ok &= rhs.is_ok_and(|r| r == lhs);
        }
    }
    families.push(("(ii) intersection between X and E".to_string(), ok));

    let mut ok = true;
    for k in 0..ealg.rank() {
        for l in 0..=k {
            let g = ealg.basis_element(k);
            let d = ealg.basis_element(l);
            let lhs = bl.mul(&res.j_push.apply(&g), &res.j_push.apply(&d));
            let rhs = res.push_j(&ealg.mul(&ealg.mul(&g, &d), &res.chi_zeta));
            ok &= rhs.is_ok_and(|r| r == lhs);
        }
    }
    families.push(("(iii) intersection on E".to_string(), ok));

    let mut ok = true;
    for t in 0..z.rank() {
        let theta = z.basis_element(t);
        let lhs = res.pi(&res.data.i_push.apply(&theta));
        let rhs = res.j_push.apply(&ealg.mul(&res.excess_class, &e.pull(&theta)));
        ok &= lhs == rhs;
    }
    families.push(("(iv) excess intersection".to_string(), ok));

    let r = res.codimension();
    families.push((
        "rank = rank(X) + (r-1) rank(Z)".to_string(),
        bl.rank() == x.rank() + (r - 1) * z.rank(),
    ));
    families.push(("associativity".to_string(), bl.check_associative().is_ok()));
    families.push(("relation on E".to_string(), e.relation().is_zero()));
    BlowupReport { families }
}

/// The presentation of the blowup by the generators of `A(X)` and one
/// generator `name(s, b)` for each `j_*(zeta^s b)`, `s <= r-1`, with the
/// module relations, the products of push-forwards and the excess
/// relation. Each generator must already be a named class.
pub fn full_presentation(
    res: &BlowupResult,
    base: &Presentation,
    name: impl Fn(usize, usize) -> String,
) -> Result<Presentation, ConstructionError> {
    let e = &res.exceptional;
    let ealg = &e.algebra;
    let x = &res.data.ambient;
    let z = &e.base;
    let r = res.codimension();
    let nz = z.rank();
    let mut slot = vec![(0, 0); ealg.rank()];
    let mut gens = base.generators().to_vec();
    for s in 0..r {
        for b in 0..nz {
            slot[e.index(s, b)] = (s, b);
            let label = name(s, b);
            let want = res.push_j(&ealg.basis_element(e.index(s, b)))?;
            match res.algebra.named(&label) {
                Some(v) if *v == want => {}
                _ => return Err(ConstructionError::Input(format!("{label} is not named as j_*(zeta^{s} b_{b})"))),
            }
            gens.push((label, 1 + s as i32 + z.basis()[b].degree));
        }
    }
    let jvar = |k: usize| {
        let (s, b) = slot[k];
        CoefficientPoly::var(Variable::new(name(s, b), 1 + s as i32 + z.basis()[b].degree))
    };
    let lin = |g: &Element| {
        let mut out = CoefficientPoly::zero();
        for (k, c) in g.support() {
            out += &(c * &jvar(k));
        }
        out
    };
    let mut relations = base.relations().to_vec();
    for (gname, deg) in base.generators() {
        let xg = x
            .named(gname)
            .ok_or_else(|| ConstructionError::Input(format!("generator {gname} is not a named class")))?;
        let restricted = e.pull(&res.data.i_pull.apply(xg));
        let gv = CoefficientPoly::var(Variable::new(gname, *deg));
        for k in 0..ealg.rank() {
            relations.push(&(&gv * &jvar(k)) - &lin(&ealg.mul(&restricted, &ealg.basis_element(k))));
        }
    }
    for k in 0..ealg.rank() {
        for l in k..ealg.rank() {
            let g = ealg.mul(&ealg.mul(&ealg.basis_element(k), &ealg.basis_element(l)), &res.chi_zeta);
            relations.push(&(&jvar(k) * &jvar(l)) - &lin(&g));
        }
    }
    for b in 0..nz {
        let pushed = as_poly(x, &res.data.i_push.apply(&z.basis_element(b)), base)?;
        let g = ealg.mul(&res.excess_class, &e.pull(&z.basis_element(b)));
        relations.push(&pushed - &lin(&g));
    }
    let relations = relations.into_iter().filter(|p| !p.is_zero()).collect();
    let pres = Presentation::new(base.scalars(), gens, relations)?;
    if let Some(k) = pres.first_failure(&res.algebra)? {
        return Err(ConstructionError::Reduction(format!(
            "relation {} fails in the blowup",
            pres.relations()[k]
        )));
    }
    Ok(pres)
}
