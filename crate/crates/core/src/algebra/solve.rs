use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::symbolic::{CoefficientPoly, Monomial};

use super::linalg::{ColumnEchelon, IntMatrix};
use super::{AlgebraError, Element, GradedFreeAlgebra};

struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
    echelon: ColumnEchelon,
}

/// Solves `sum_j x_j f(s_j) = y` for a graded linear map `f` into a graded
/// free algebra. Coefficient degrees are nonpositive, so the map is block
/// triangular by degree with integer diagonal blocks; solving proceeds
/// from the lowest target degree up.
pub struct GradedSolver {
    images: Vec<Element>,
    blocks: BTreeMap<i32, Block>,
    target_degrees: Vec<i32>,
}

impl GradedSolver {
    /// `source_degrees[j] + shift` is the degree of `images[j]`.
    pub fn new(
        target: &GradedFreeAlgebra,
        source_degrees: &[i32],
        images: Vec<Element>,
        shift: i32,
    ) -> Result<Self, AlgebraError> {
        if !target.is_graded() {
            return Err(AlgebraError::Grading("graded solve in an ungraded algebra".into()));
        }
        let degrees: Vec<i32> = target.basis().iter().map(|b| b.degree).collect();
        Ok(Self::from_degrees(&degrees, source_degrees, images, shift))
    }

    /// As `new`, with the target given only by the degrees of its
    /// coordinates.
    pub fn from_degrees(
        target_basis_degrees: &[i32],
        source_degrees: &[i32],
        images: Vec<Element>,
        shift: i32,
    ) -> Self {
        let mut target_degrees: Vec<i32> = target_basis_degrees.to_vec();
        target_degrees.sort();
        target_degrees.dedup();
        // source degrees outside the target's range get row-less blocks
        let mut all_degrees = target_degrees.clone();
        all_degrees.extend(source_degrees.iter().map(|d| d + shift));
        all_degrees.sort();
        all_degrees.dedup();
        let mut blocks = BTreeMap::new();
        for &e in &all_degrees {
            let rows: Vec<usize> = (0..target_basis_degrees.len())
                .filter(|&k| target_basis_degrees[k] == e)
                .collect();
            let cols: Vec<usize> = (0..images.len())
                .filter(|&j| source_degrees[j] + shift == e)
                .collect();
            let one = Monomial::one();
            let m: IntMatrix = rows
                .iter()
                .map(|&k| {
                    cols.iter()
                        .map(|&j| images[j].coefficient(k).coefficient(&one))
                        .collect()
                })
                .collect();
            let echelon = ColumnEchelon::new(&m, cols.len());
            blocks.insert(e, Block { rows, cols, echelon });
        }
        GradedSolver {
            images,
            blocks,
            target_degrees,
        }
    }

    /// True if every target degree is hit surjectively over the integers.
    pub fn is_surjective(&self) -> bool {
        self.blocks.values().all(|b| b.echelon.is_surjective())
    }

    /// Degrees whose integer block is not surjective.
    pub fn failing_degrees(&self) -> Vec<i32> {
        self.blocks
            .iter()
            .filter(|(_, b)| !b.echelon.is_surjective())
            .map(|(d, _)| *d)
            .collect()
    }

    pub fn solve(&self, y: &Element) -> Option<Vec<CoefficientPoly>> {
        let mut x = vec![CoefficientPoly::zero(); self.images.len()];
        let mut r = y.clone();
        for e in &self.target_degrees {
            let block = &self.blocks[e];
            let b: Vec<CoefficientPoly> = block.rows.iter().map(|&k| r.coefficient(k).clone()).collect();
            if b.iter().all(CoefficientPoly::is_zero) {
                continue;
            }
            let sol = block.echelon.solve(&b)?;
            for (s, &j) in sol.iter().zip(&block.cols) {
                if !s.is_zero() {
                    x[j] += s;
                    r -= &self.images[j].scale(s);
                }
            }
        }
        r.is_zero().then_some(x)
    }

    /// Integer kernel vectors of each diagonal block, embedded in the
    /// source coordinates.
    pub fn block_kernels(&self) -> Vec<Vec<BigInt>> {
        let n = self.images.len();
        let mut out = Vec::new();
        for block in self.blocks.values() {
            for v in block.echelon.kernel() {
                let mut full = vec![BigInt::from(0); n];
                for (c, &j) in v.into_iter().zip(&block.cols) {
                    full[j] = c;
                }
                out.push(full);
            }
        }
        out
    }
}
