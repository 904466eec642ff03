use std::sync::Arc;

use crate::algebra::{AlgebraMap, Element, GradedFreeAlgebra, GradedSolver};
use crate::fgl::{f_sum, formal_inverse, Theory};

use super::{del_pezzo, m0n_ring, CatalogError, DelPezzo, DelPezzoBase, M0nRing};

/// `A(M_{0,5})` identified with `P^2` blown up at four points:
/// `D_{i5} -> e_i` and `D_{ij} -> h -_F e_k -_F e_l` for `{i,j,k,l} = {1,2,3,4}`.
#[derive(Clone, Debug)]
pub struct M05Iso {
    pub m05: M0nRing,
    pub del_pezzo: DelPezzo,
    pub map: AlgebraMap,
}

/// The image of each generator of `A(M_{0,5})` in the del Pezzo surface.
fn generator_image(m05: &M0nRing, dp: &GradedFreeAlgebra, g: usize) -> Element {
    let side = m05.index.subset(g);
    let law = dp.law();
    let e = |k: usize| dp.class(&format!("e{k}"));
    match side.as_slice() {
        [i, 5] => e(*i),
        [k, l, 5] => {
            let terms = [dp.class("h"), formal_inverse(dp, law, &e(*k)), formal_inverse(dp, law, &e(*l))];
            f_sum(dp, law, &terms)
        }
        _ => unreachable!("boundary divisors of M_(0,5) have sides of size 2 or 3"),
    }
}

/// Builds the map on the basis from the generator images and checks it
/// is a ring isomorphism.
pub fn m05_change_of_basis(theory: &Theory) -> Result<M05Iso, CatalogError> {
    let m05 = m0n_ring(theory, 5, false)?;
    let dp = del_pezzo(theory, 4, DelPezzoBase::P2)?;
    let src = m05.algebra.clone();
    let tgt = dp.algebra.clone();
    let gens: Vec<Element> = (0..m05.index.len()).map(|g| generator_image(&m05, &tgt, g)).collect();
    let images: Vec<Element> = src
        .basis()
        .iter()
        .map(|b| {
            if b.label == "1" {
                return tgt.one();
            }
            b.label.split('*').fold(tgt.one(), |acc, factor| {
                let (name, e) = factor.split_once('^').unwrap_or((factor, "1"));
                let g = m05.index.index_of_name(name).expect("generator label");
                tgt.mul(&acc, &tgt.pow(&gens[g], e.parse().expect("exponent")))
            })
        })
        .collect();
    let map = AlgebraMap::ring_hom(src.clone(), tgt.clone(), images.clone())?;
    for g in 0..m05.index.len() {
        if map.apply(&m05.generator(g)) != gens[g] {
            return Err(CatalogError::Mismatch(format!("image of {}", m05.index.name(g))));
        }
    }
    check_bijective(&src, &tgt, images)?;
    Ok(M05Iso {
        m05,
        del_pezzo: dp,
        map,
    })
}

fn check_bijective(src: &Arc<GradedFreeAlgebra>, tgt: &GradedFreeAlgebra, images: Vec<Element>) -> Result<(), CatalogError> {
    let degrees: Vec<i32> = src.basis().iter().map(|b| b.degree).collect();
    let solver = GradedSolver::new(tgt, &degrees, images, 0)?;
    if src.rank() != tgt.rank() || !solver.is_surjective() {
        return Err(CatalogError::Mismatch("the map is not an isomorphism".into()));
    }
    Ok(())
}

/// On `M_{0,6}` in the Chow ring: the pairwise products `Q_A`, `Q_B` of the
/// divisors separating `12|34` and `13|24`, multiplied by `x34 = x1256`.
/// A naive degree-two correction of the four-point relation would need
/// these to agree.
#[derive(Clone, Debug)]
pub struct NaiveObstruction {
    pub ring: M0nRing,
    pub qa_x34: Element,
    pub qb_x34: Element,
}

impl NaiveObstruction {
    /// True when the two products differ, so no such correction exists.
    pub fn obstructs(&self) -> bool {
        self.qa_x34 != self.qb_x34
    }
}

pub fn naive_obstruction() -> Result<NaiveObstruction, CatalogError> {
    let ring = m0n_ring(&Theory::Chow, 6, false)?;
    let alg = ring.algebra.clone();
    let pairwise = |sides: Vec<usize>| {
        let xs: Vec<Element> = sides.into_iter().map(|i| ring.generator(i)).collect();
        let mut q = alg.zero();
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                q += &alg.mul(&xs[a], &xs[b]);
            }
        }
        q
    };
    let x34 = ring
        .class(&[3, 4])
        .ok_or_else(|| CatalogError::Range("no divisor x34".into()))?;
    let qa = pairwise(ring.index.separating(1, 2, 3, 4));
    let qb = pairwise(ring.index.separating(1, 3, 2, 4));
    Ok(NaiveObstruction {
        qa_x34: alg.mul(&qa, &x34),
        qb_x34: alg.mul(&qb, &x34),
        ring,
    })
}
