use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use crate::symbolic::CoefficientPoly;

/// Coordinates of a class in a finite free algebra, one coefficient per
/// basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    coeffs: Vec<CoefficientPoly>,
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Element {
            coeffs: vec![CoefficientPoly::zero(); rank],
        }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = Self::zero(rank);
        e.coeffs[i] = CoefficientPoly::one();
        e
    }

    pub fn from_coefficients(coeffs: Vec<CoefficientPoly>) -> Self {
        Element { coeffs }
    }

    /// Sparse constructor from `(index, coefficient)` pairs; repeats add up.
    pub fn from_sparse(rank: usize, entries: impl IntoIterator<Item = (usize, CoefficientPoly)>) -> Self {
        let mut e = Self::zero(rank);
        for (i, c) in entries {
            e.coeffs[i] += &c;
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, i: usize) -> &CoefficientPoly {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[CoefficientPoly] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<CoefficientPoly> {
        self.coeffs
    }

    pub fn set_coefficient(&mut self, i: usize, c: CoefficientPoly) {
        self.coeffs[i] = c;
    }

    pub fn add_to(&mut self, i: usize, c: &CoefficientPoly) {
        self.coeffs[i] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CoefficientPoly::is_zero)
    }

    /// Nonzero coordinates in basis order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &CoefficientPoly)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &CoefficientPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank());
        }
        Element {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        Element {
            coeffs: self.coeffs.iter().map(|x| x.scale(&c)).collect(),
        }
    }

    /// Coordinate-wise map, e.g. a substitution of coefficients.
    pub fn map_coefficients<E>(
        &self,
        f: impl Fn(&CoefficientPoly) -> Result<CoefficientPoly, E>,
    ) -> Result<Self, E> {
        Ok(Element {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// True if no coordinate involves a Lazard generator or `b`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| !c.has_coefficient_support())
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert_eq!(self.rank(), rhs.rank(), "elements of different algebras");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        assert_eq!(self.rank(), rhs.rank(), "elements of different algebras");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
