use std::sync::Arc;

use super::{AlgebraError, Element, GradedFreeAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// A pullback: unital and multiplicative.
    RingHom,
    /// A push-forward raising degree by `shift`.
    ModuleMap { shift: i32 },
}

/// A linear map between finite free algebras given by the images of the
/// source basis.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<GradedFreeAlgebra>,
    target: Arc<GradedFreeAlgebra>,
    images: Vec<Element>,
    kind: MapKind,
}

impl AlgebraMap {
    pub fn new(
        source: Arc<GradedFreeAlgebra>,
        target: Arc<GradedFreeAlgebra>,
        images: Vec<Element>,
        kind: MapKind,
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.rank() || images.iter().any(|e| e.rank() != target.rank()) {
            return Err(AlgebraError::Invalid("map matrix has the wrong shape".into()));
        }
        if source.is_graded() && target.is_graded() {
            let shift = match kind {
                MapKind::RingHom => 0,
                MapKind::ModuleMap { shift } => shift,
            };
            for (i, img) in images.iter().enumerate() {
                let d = source.basis()[i].degree + shift;
                if !target.is_homogeneous(img, d) {
                    return Err(AlgebraError::Grading(format!(
                        "image of {} is not homogeneous of degree {d}",
                        source.basis()[i].label
                    )));
                }
            }
        }
        Ok(AlgebraMap {
            source,
            target,
            images,
            kind,
        })
    }

    /// The ring homomorphism determined by the images of the source's
    /// basis, checked for unit and multiplicativity.
    pub fn ring_hom(
        source: Arc<GradedFreeAlgebra>,
        target: Arc<GradedFreeAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        let f = Self::new(source, target, images, MapKind::RingHom)?;
        f.check_ring_hom()?;
        Ok(f)
    }

    pub fn source(&self) -> &Arc<GradedFreeAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedFreeAlgebra> {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, a: &Element) -> Element {
        assert_eq!(a.rank(), self.source.rank(), "element of another algebra");
        let mut out = self.target.zero();
        for (i, c) in a.support() {
            out += &self.images[i].scale(c);
        }
        out
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap, AlgebraError> {
        if first.target.rank() != self.source.rank() {
            return Err(AlgebraError::Invalid("maps do not compose".into()));
        }
        let kind = match (first.kind, self.kind) {
            (MapKind::RingHom, MapKind::RingHom) => MapKind::RingHom,
            (a, b) => MapKind::ModuleMap {
                shift: shift_of(a) + shift_of(b),
            },
        };
        let images = first.images.iter().map(|e| self.apply(e)).collect();
        AlgebraMap::new(first.source.clone(), self.target.clone(), images, kind)
    }

    pub fn check_ring_hom(&self) -> Result<(), AlgebraError> {
        let s = &self.source;
        let t = &self.target;
        if self.apply(&s.one()) != t.one() {
            return Err(AlgebraError::NotRingHom("unit is not preserved".into()));
        }
        for i in 0..s.rank() {
            for j in 0..=i {
                let lhs = self.apply(s.product_ref(i, j));
                let rhs = t.mul(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Err(AlgebraError::NotRingHom(format!(
                        "{} * {}",
                        s.basis()[i].label,
                        s.basis()[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// The matrix in the target basis, columns indexed by the source.
    pub fn matrix(&self) -> Vec<Vec<crate::symbolic::CoefficientPoly>> {
        (0..self.target.rank())
            .map(|k| self.images.iter().map(|e| e.coefficient(k).clone()).collect())
            .collect()
    }
}

fn shift_of(k: MapKind) -> i32 {
    match k {
        MapKind::RingHom => 0,
        MapKind::ModuleMap { shift } => shift,
    }
}

/// `f_*(f^*(a) b) = a f_*(b)` for all basis elements `a` of the target of
/// the push-forward and `b` of its source.
pub fn check_projection_formula(pull: &AlgebraMap, push: &AlgebraMap) -> Result<(), AlgebraError> {
    let x = push.target();
    let z = push.source();
    if pull.source().rank() != x.rank() || pull.target().rank() != z.rank() {
        return Err(AlgebraError::Invalid("maps are not a pull/push pair".into()));
    }
    for a in 0..x.rank() {
        let fa = pull.apply(&x.basis_element(a));
        for b in 0..z.rank() {
            let lhs = push.apply(&z.mul(&fa, &z.basis_element(b)));
            let rhs = x.mul(&x.basis_element(a), &push.apply(&z.basis_element(b)));
            if lhs != rhs {
                return Err(AlgebraError::ProjectionFormula(format!(
                    "{} with {}",
                    x.basis()[a].label,
                    z.basis()[b].label
                )));
            }
        }
    }
    Ok(())
}
