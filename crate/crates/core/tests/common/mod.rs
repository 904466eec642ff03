//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use orient::symbolic::{parse_poly, CoefficientPoly, VarContext};

pub fn ctx(vars: &[(&str, i32)]) -> VarContext {
    vars.iter().fold(VarContext::new(), |c, (n, d)| c.with(n, *d))
}

pub fn poly(s: &str, vars: &[(&str, i32)]) -> CoefficientPoly {
    parse_poly(s, &ctx(vars)).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn int(n: i64) -> CoefficientPoly {
    CoefficientPoly::constant(n)
}

/// The coefficient `s` of `e22` in `e00 * e00`.
pub const S_COEFF: &str = "57*a11^3 + 51*a11*a12 - 51*a22 + 102*a13";

/// `e_{a,b} * e_{c,d}` on the exceptional divisor of `P^5` blown up along
/// the Veronese surface, rows and columns ordered `e00, e01, e02, e10, ..`;
/// `s` stands for `S_COEFF`.
pub const PUSHFORWARD_TABLE: [[&str; 9]; 9] = [
    [
        "-e01 + a11*e02 + 30*a11^2*e21 + 9*a11^2*e12 + s*e22",
        "-30*a11*e21 - e02 - 9*a11*e12 - 57*a11^2*e22",
        "30*e21 + 9*e12 + 57*a11*e22",
        "-e11 + a11*e12 + 9*a11^2*e22",
        "-e12 - 9*a11*e22",
        "9*e22",
        "-e21 + a11*e22",
        "-e22",
        "0",
    ],
    [
        "-30*a11*e21 - e02 - 9*a11*e12 - 57*a11^2*e22",
        "30*e21 + 9*e12 + 57*a11*e22",
        "-51*e22",
        "-e12 - 9*a11*e22",
        "9*e22",
        "0",
        "-e22",
        "0",
        "0",
    ],
    ["30*e21 + 9*e12 + 57*a11*e22", "-51*e22", "0", "9*e22", "0", "0", "0", "0", "0"],
    [
        "-e11 + a11*e12 + 9*a11^2*e22",
        "-e12 - 9*a11*e22",
        "9*e22",
        "-e21 + a11*e22",
        "-e22",
        "0",
        "0",
        "0",
        "0",
    ],
    ["-e12 - 9*a11*e22", "9*e22", "0", "-e22", "0", "0", "0", "0", "0"],
    ["9*e22", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["-e21 + a11*e22", "-e22", "0", "0", "0", "0", "0", "0", "0"],
    ["-e22", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0"],
];

/// The symbols `e{p}{q}`, `q <= 2`, with degree `1 + p + q`.
pub fn exceptional_symbols() -> Vec<(String, i32)> {
    (0..3)
        .flat_map(|p| (0..3).map(move |q| (format!("e{p}{q}"), 1 + p + q)))
        .collect()
}

pub fn pushforward_fixture() -> Vec<Vec<CoefficientPoly>> {
    let syms = exceptional_symbols();
    let c = syms.iter().fold(VarContext::new(), |c, (n, d)| c.with(n, *d));
    PUSHFORWARD_TABLE
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| {
                    let s = cell.replace("s*", &format!("({S_COEFF})*"));
                    parse_poly(&s, &c).unwrap_or_else(|e| panic!("{cell}: {e}"))
                })
                .collect()
        })
        .collect()
}

/// The twisted-cubic blowup on the basis `1, alpha, alpha^2, alpha^3, e,
/// x`, derived by hand from its twelve relations: non-trivial products
/// among `alpha, e, x`, universal coefficients.
pub const TWISTED_CUBIC_PRODUCTS: [(&str, &str, &str); 7] = [
    ("alpha", "e", "3*x"),
    ("alpha", "x", "0"),
    ("alpha^2", "e", "0"),
    ("e", "e", "-3*alpha^2 + 10*x - 2*a11*alpha^3"),
    ("e", "x", "-alpha^3"),
    ("x", "x", "0"),
    ("alpha", "alpha^3", "0"),
];

/// `z` in the basis above.
pub const TWISTED_CUBIC_Z: &str = "3*alpha^2 - 10*x - 8*a11*alpha^3";

/// Four-point relations of the moduli space of five-pointed rational
/// curves, each a triple of equal formal sums.
pub const M05_FOUR_POINT: [[&str; 3]; 5] = [
    [
        "x125 + x345 + a11*x125*x345",
        "x135 + x245 + a11*x135*x245",
        "x145 + x235 + a11*x145*x235",
    ],
    [
        "x145 + x15 + a11*x145*x15",
        "x245 + x25 + a11*x245*x25",
        "x345 + x35 + a11*x345*x35",
    ],
    [
        "x135 + x15 + a11*x135*x15",
        "x235 + x25 + a11*x235*x25",
        "x345 + x45 + a11*x345*x45",
    ],
    [
        "x125 + x15 + a11*x125*x15",
        "x235 + x35 + a11*x235*x35",
        "x245 + x45 + a11*x245*x45",
    ],
    [
        "x125 + x25 + a11*x125*x25",
        "x135 + x35 + a11*x135*x35",
        "x145 + x45 + a11*x145*x45",
    ],
];

/// The separating sum `F(u, v, w, t)` for the four-point relation `1,2|3,4`
/// on six points, with incompatible products already dropped.
fn six_point_sum(u: &str, v: &str, w: &str, t: &str) -> String {
    format!(
        "{u} + {v} + {w} + {t} \
         + a11*({u}*{v} + {u}*{w} + {u}*{t} + {v}*{t} + {w}*{t}) \
         + a21*({u}^2*{v} + {u}*{v}^2 + {u}^2*{w} + {u}*{w}^2 + {u}^2*{t} + {u}*{t}^2 \
         + {v}^2*{t} + {v}*{t}^2 + {w}^2*{t} + {w}*{t}^2 + 2*{u}*{v}*{t} + 2*{u}*{w}*{t}) \
         + a11^2*({u}*{v}*{t} + {u}*{w}*{t})"
    )
}

pub fn m06_four_point() -> [String; 3] {
    [
        six_point_sum("x3456", "x346", "x126", "x1256"),
        six_point_sum("x2456", "x246", "x136", "x1356"),
        six_point_sum("x2356", "x236", "x146", "x1456"),
    ]
}

/// Poincare polynomials of the moduli spaces of stable `n`-pointed
/// rational curves from the recursion
/// `P_{n+1} = (1 + q) P_n + q/2 sum_{j=2}^{n-2} C(n, j) P_{j+1} P_{n-j+1}`.
pub fn moduli_betti(n: usize) -> Vec<u64> {
    let mut p: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    p.insert(3, vec![1]);
    p.insert(4, vec![1, 1]);
    let binom = |n: usize, k: usize| -> u64 { (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64) };
    for m in 4..n {
        let prev = &p[&m];
        let mut next = vec![0u64; prev.len() + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        let mut twice = vec![0u64; next.len()];
        for j in 2..=m - 2 {
            let (a, b) = (&p[&(j + 1)], &p[&(m - j + 1)]);
            for (i, x) in a.iter().enumerate() {
                for (k, y) in b.iter().enumerate() {
                    twice[i + k + 1] += binom(m, j) * x * y;
                }
            }
        }
        for (i, t) in twice.iter().enumerate() {
            assert!(t % 2 == 0);
            next[i] += t / 2;
        }
        p.insert(m + 1, next);
    }
    p[&n].clone()
}

/// Dense univariate power by repeated squaring, as a naive oracle.
pub fn dense_pow(base: &[i64], e: u32) -> Vec<BigInt> {
    let mul = |a: &[BigInt], b: &[BigInt]| {
        let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut acc = vec![BigInt::from(1)];
    let mut sq: Vec<BigInt> = base.iter().map(|&c| BigInt::from(c)).collect();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &sq);
        }
        sq = mul(&sq, &sq);
        e >>= 1;
    }
    acc
}

/// `1 / (1 + sum_{i>=1} c_i t^i)` to order `n`, by naive power-series
/// division.
pub fn series_inverse(c: &[CoefficientPoly], n: usize) -> Vec<CoefficientPoly> {
    let mut inv = vec![CoefficientPoly::one()];
    for k in 1..=n {
        let mut s = CoefficientPoly::zero();
        for i in 1..=k {
            if let Some(ci) = c.get(i) {
                s = &s - &(ci * &inv[k - i]);
            }
        }
        inv.push(s);
    }
    inv
}

/// A degree-preserving map is bijective iff each diagonal degree block of
/// its matrix is an integer matrix of determinant `+-1`.
pub fn is_graded_iso(map: &orient::algebra::AlgebraMap) -> bool {
    use num_traits::Signed;
    let (s, t) = (map.source(), map.target());
    if s.rank() != t.rank() {
        return false;
    }
    let images = map.images();
    let degrees: std::collections::BTreeSet<i32> = s.basis().iter().map(|b| b.degree).collect();
    degrees.into_iter().all(|d| {
        let src: Vec<usize> = (0..s.rank()).filter(|&i| s.basis()[i].degree == d).collect();
        let tgt: Vec<usize> = (0..t.rank()).filter(|&k| t.basis()[k].degree == d).collect();
        if src.len() != tgt.len() {
            return false;
        }
        let block: Option<Vec<Vec<BigInt>>> = src
            .iter()
            .map(|&i| tgt.iter().map(|&k| images[i].coefficient(k).constant_value()).collect())
            .collect();
        block.is_some_and(|m| orient::algebra::linalg::determinant(&m).abs() == BigInt::from(1))
    })
}
