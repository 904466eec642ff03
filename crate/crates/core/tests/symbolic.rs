mod common;

use std::collections::BTreeMap;

use common::{dense_pow, int, poly};
use num_bigint::BigInt;
use orient::fgl::{f_add, FormalGroupLaw, FormalRing, Specialization, Truncated};
use orient::symbolic::{
    elementary, expand_elementary, symmetric_reduce, truncate_at_degree, CoefficientPoly, Monomial,
    SymbolicError, Variable,
};
use proptest::prelude::*;

fn v(name: &str) -> Variable {
    Variable::new(name, 1)
}

#[test]
fn arithmetic_examples() {
    let a = poly("a11 + 2", &[]);
    let b = poly("a11 - 2", &[]);
    assert_eq!(&a * &b, poly("a11^2 - 4", &[]));
    let u = [("u", 1)];
    assert_eq!(&poly("2*u", &u) * &poly("a11*u", &u), poly("2*a11*u^2", &u));
}

#[test]
fn power_matches_dense_oracle() {
    let eta = [("eta", 1)];
    let got = poly("1 + 3*eta", &eta).pow(4);
    let want = dense_pow(&[1, 3], 4);
    for (k, c) in want.iter().enumerate() {
        assert_eq!(got.coefficient(&Monomial::power(v("eta"), k as u32)), *c);
    }
    assert_eq!(got, poly("1 + 12*eta + 54*eta^2 + 108*eta^3 + 81*eta^4", &eta));
}

#[test]
fn large_coefficients_stay_exact() {
    let p = poly("6*alpha", &[("alpha", 1)]).pow(40);
    let want = BigInt::from(6).pow(40);
    assert_eq!(p.coefficient(&Monomial::power(v("alpha"), 40)), want);
}

#[test]
fn lazard_generators_are_symmetric() {
    assert_eq!(poly("a21", &[]), poly("a12", &[]));
    assert_eq!(Variable::lazard(3, 1), Variable::lazard(1, 3));
    assert_eq!(Variable::lazard(1, 2).degree(), -2);
    assert_eq!(Variable::beta().degree(), -1);
}

#[test]
fn context_mismatch_is_an_error() {
    let p = CoefficientPoly::var(Variable::new("t", 1));
    let q = CoefficientPoly::var(Variable::new("t", 2));
    assert!(matches!(p.checked_add(&q), Err(SymbolicError::Context(_))));
    assert!(p.checked_mul(&q).is_err());
}

#[test]
fn specialization_examples() {
    let alpha = [("alpha", 1)];
    let class = poly("3*alpha^2 + 2*a11*alpha^3", &alpha);
    assert_eq!(Specialization::chow().apply(&class).unwrap(), poly("3*alpha^2", &alpha));
    assert_eq!(
        Specialization::ktheory().apply(&class).unwrap(),
        poly("3*alpha^2 - 2*b*alpha^3", &alpha)
    );
    assert_eq!(Specialization::identity().apply(&class).unwrap(), class);
}

#[test]
fn substitution_checks_grading() {
    let mut bad = BTreeMap::new();
    bad.insert(Variable::lazard(1, 1), int(1));
    let p = poly("a11*u", &[("u", 1)]);
    assert!(matches!(p.substitute(&bad, false), Err(SymbolicError::Grading { .. })));
    assert_eq!(p.substitute(&bad, true).unwrap(), poly("u", &[("u", 1)]));
}

#[test]
fn truncation_examples() {
    let eta = [("eta", 1)];
    assert!(truncate_at_degree(&poly("eta^3", &eta), &[v("eta")], 2).is_zero());
    assert_eq!(truncate_at_degree(&int(7), &[v("eta")], 0), int(7));
    let u = [("u", 1)];
    assert_eq!(truncate_at_degree(&poly("u + u^3", &u), &[v("u")], 2), poly("u", &u));
}

#[test]
fn symmetric_examples() {
    let roots = [v("x"), v("y")];
    let targets = [Variable::new("e1", 1), Variable::new("e2", 2)];
    let xy = [("x", 1), ("y", 1)];
    let es = [("e1", 1), ("e2", 2)];
    assert_eq!(
        symmetric_reduce(&poly("x^2 + y^2", &xy), &roots, &targets).unwrap(),
        poly("e1^2 - 2*e2", &es)
    );
    assert_eq!(symmetric_reduce(&poly("x*y", &xy), &roots, &targets).unwrap(), poly("e2", &es));
    assert_eq!(
        symmetric_reduce(&poly("x^2*y", &xy), &roots, &targets),
        Err(SymbolicError::NotSymmetric)
    );
}

/// Total Chern class of the symmetric square of a rank-two bundle with
/// `c_1 = 3 eta`, `c_2 = 3 eta^2` on a surface.
#[test]
fn symmetric_square_chern_class() {
    let law = FormalGroupLaw::universal(2);
    let (x, y) = (v("x"), v("y"));
    let ring = Truncated::new(vec![x.clone(), y.clone()], 2);
    let (px, py) = (CoefficientPoly::var(x.clone()), CoefficientPoly::var(y.clone()));
    let factor = |a: &CoefficientPoly, b: &CoefficientPoly| &CoefficientPoly::one() + &f_add(&ring, &law, a, b);
    let total = ring.mul(&ring.mul(&factor(&px, &px), &factor(&px, &py)), &factor(&py, &py));
    let targets = [Variable::new("c1", 1), Variable::new("c2", 2)];
    let in_c = symmetric_reduce(&total, &[x, y], &targets).unwrap();
    let eta = [("eta", 1)];
    let mut assign = BTreeMap::new();
    assign.insert(targets[0].clone(), poly("3*eta", &eta));
    assign.insert(targets[1].clone(), poly("3*eta^2", &eta));
    let on_p2 = truncate_at_degree(&in_c.substitute(&assign, false).unwrap(), &[v("eta")], 2);
    assert_eq!(on_p2, poly("1 + 9*eta + 6*a11*eta^2 + 30*eta^2", &eta));
}

#[test]
fn parse_print_round_trip() {
    let vars = [("alpha", 1), ("e", 1), ("x", 2)];
    for s in [
        "-3*a11*alpha^2 + (-20*a12 - 2*a11^2)*alpha^3 + 2*e + 10*a11*x",
        "a11^2 - 4",
        "0",
        "-b*alpha^3 + 7",
    ] {
        let p = poly(s, &vars);
        assert_eq!(poly(&p.to_string(), &vars), p, "{s}");
    }
}

// random polynomials in u, v, w with Lazard coefficients
fn arb_poly() -> impl Strategy<Value = CoefficientPoly> {
    let term = (-5i64..=5, 0u32..3, 0u32..3, 0u32..3, 0u32..2);
    prop::collection::vec(term, 0..6).prop_map(|ts| {
        let mut p = CoefficientPoly::zero();
        for (c, a, b, d, l) in ts {
            let m = Monomial::from_pairs([
                (v("u"), a),
                (v("v"), b),
                (v("w"), d),
                (Variable::lazard(1, 1), l),
            ]);
            p.add_term(m, BigInt::from(c));
        }
        p
    })
}

fn arb_homogeneous(d: i32) -> impl Strategy<Value = CoefficientPoly> {
    arb_poly().prop_map(move |p| p.homogeneous_component(d))
}

// symmetric polynomials in three roots: products of elementary ones
fn arb_symmetric() -> impl Strategy<Value = CoefficientPoly> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..2, 0u32..2), 0..5).prop_map(|ts| {
        let roots = [v("x1"), v("x2"), v("x3")];
        let mut p = CoefficientPoly::zero();
        for (c, a, b, d) in ts {
            let t = &(&elementary(&roots, 1).pow(a) * &elementary(&roots, 2).pow(b)) * &elementary(&roots, 3).pow(d);
            p = &p + &t.scale(&BigInt::from(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn degree_is_additive(a in -1i32..4, b in -1i32..4, p in arb_poly(), q in arb_poly()) {
        let (p, q) = (p.homogeneous_component(a), q.homogeneous_component(b));
        let pq = &p * &q;
        prop_assert!(pq.is_zero() || pq.homogeneous_degree() == Some(a + b));
    }

    #[test]
    fn components_partition(p in arb_poly()) {
        let mut sum = CoefficientPoly::zero();
        for (d, c) in p.components() {
            prop_assert!(c.is_homogeneous_of(d));
            sum = &sum + &c;
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn truncation_is_a_congruence(p in arb_poly(), q in arb_poly(), bound in 0u32..5) {
        let g = [v("u"), v("v"), v("w")];
        let t = |x: &CoefficientPoly| truncate_at_degree(x, &g, bound);
        prop_assert_eq!(t(&t(&p)), t(&p));
        prop_assert_eq!(t(&(&p * &q)), t(&(&t(&p) * &t(&q))));
    }

    #[test]
    fn symmetric_round_trip(p in arb_symmetric()) {
        let roots = [v("x1"), v("x2"), v("x3")];
        let targets = [Variable::new("s1", 1), Variable::new("s2", 2), Variable::new("s3", 3)];
        let r = symmetric_reduce(&p, &roots, &targets).unwrap();
        prop_assert_eq!(expand_elementary(&r, &roots, &targets), p);
    }

    #[test]
    fn print_then_parse(p in arb_homogeneous(2)) {
        let vars = [("u", 1), ("v", 1), ("w", 1)];
        prop_assert_eq!(poly(&p.to_string(), &vars), p);
    }
}
