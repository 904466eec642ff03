//! Integer linear algebra: fraction-free determinants and unimodular
//! column reduction, with right-hand sides over the coefficient ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::symbolic::CoefficientPoly;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Determinant by Bareiss elimination; exact over the integers.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `m * u = h` with `u` unimodular and `h` in column echelon form: pivot
/// `(row, col)` pairs have increasing rows, and every entry to the right
/// of a pivot in its row is zero.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<(usize, usize)>,
    pub rows: usize,
    pub cols: usize,
}

impl ColumnEchelon {
    pub fn new(m: &IntMatrix, cols: usize) -> Self {
        let rows = m.len();
        let mut h = m.clone();
        let mut u: IntMatrix = (0..cols)
            .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut k = 0;
        for i in 0..rows {
            if k == cols {
                break;
            }
            for c in k + 1..cols {
                if h[i][c].is_zero() {
                    continue;
                }
                // combine columns k and c so that column c loses row i
                let a = h[i][k].clone();
                let b = h[i][c].clone();
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let (p, q) = (&a / &g, &b / &g);
                col_combine(&mut h, k, c, &x, &y, &q, &p);
                col_combine(&mut u, k, c, &x, &y, &q, &p);
            }
            if !h[i][k].is_zero() {
                if h[i][k].is_negative() {
                    negate_col(&mut h, k);
                    negate_col(&mut u, k);
                }
                pivots.push((i, k));
                k += 1;
            }
        }
        ColumnEchelon {
            h,
            u,
            pivots,
            rows,
            cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True if the columns span all of `ZZ^rows`.
    pub fn is_surjective(&self) -> bool {
        self.pivots.len() == self.rows && self.pivots.iter().all(|&(i, k)| self.h[i][k].is_one())
    }

    /// Integer kernel basis: columns of `u` past the rank.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.cols)
            .map(|c| self.u.iter().map(|row| row[c].clone()).collect())
            .collect()
    }

    /// Solves `m x = b` with `b` over the coefficient ring; `None` when
    /// no integral solution exists.
    pub fn solve(&self, b: &[CoefficientPoly]) -> Option<Vec<CoefficientPoly>> {
        assert_eq!(b.len(), self.rows);
        let mut y = vec![CoefficientPoly::zero(); self.cols];
        let mut next = 0;
        for i in 0..self.rows {
            let mut r = b[i].clone();
            for (k, yk) in y.iter().enumerate().take(next) {
                if !self.h[i][k].is_zero() && !yk.is_zero() {
                    r -= &yk.scale(&self.h[i][k]);
                }
            }
            if next < self.pivots.len() && self.pivots[next].0 == i {
                let p = &self.h[i][next];
                y[next] = exact_div(&r, p)?;
                next += 1;
            } else if !r.is_zero() {
                return None;
            }
        }
        let mut x = vec![CoefficientPoly::zero(); self.cols];
        for (j, xj) in x.iter_mut().enumerate() {
            for (k, yk) in y.iter().enumerate() {
                if !yk.is_zero() && !self.u[j][k].is_zero() {
                    *xj += &yk.scale(&self.u[j][k]);
                }
            }
        }
        Some(x)
    }
}

fn col_combine(
    m: &mut IntMatrix,
    k: usize,
    c: usize,
    x: &BigInt,
    y: &BigInt,
    q: &BigInt,
    p: &BigInt,
) {
    // [col_k, col_c] <- [x col_k + y col_c, -q col_k + p col_c]; det = xp + yq = 1
    for row in m.iter_mut() {
        let a = row[k].clone();
        let b = row[c].clone();
        row[k] = x * &a + y * &b;
        row[c] = p * &b - q * &a;
    }
}

fn negate_col(m: &mut IntMatrix, k: usize) {
    for row in m.iter_mut() {
        row[k] = -&row[k];
    }
}

/// Divides every coefficient by `d`, or `None` if some is not divisible.
pub fn exact_div(p: &CoefficientPoly, d: &BigInt) -> Option<CoefficientPoly> {
    if d.is_one() {
        return Some(p.clone());
    }
    let mut out = CoefficientPoly::zero();
    for (m, c) in p.terms() {
        let (q, r) = c.div_rem(d);
        if !r.is_zero() {
            return None;
        }
        out.add_term(m.clone(), q);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn bareiss() {
        assert_eq!(determinant(&mat(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])), BigInt::from(-5));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn echelon_solves_and_finds_kernel() {
        let m = mat(&[&[2, 3, 4], &[1, 1, 1]]);
        let e = ColumnEchelon::new(&m, 3);
        assert!(e.is_surjective());
        let b = vec![CoefficientPoly::constant(5), CoefficientPoly::lazard(1, 1)];
        let x = e.solve(&b).unwrap();
        for (row, bi) in m.iter().zip(&b) {
            let mut s = CoefficientPoly::zero();
            for (a, xj) in row.iter().zip(&x) {
                s += &xj.scale(a);
            }
            assert_eq!(&s, bi);
        }
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        for row in &m {
            let s: BigInt = row.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        let not = ColumnEchelon::new(&mat(&[&[3]]), 1);
        assert!(!not.is_surjective());
        assert!(not.solve(&[CoefficientPoly::one()]).is_none());
    }
}
