mod common;

use std::sync::Arc;

use common::{is_graded_iso, poly};
use orient::algebra::{Element, GradedFreeAlgebra, Presentation};
use orient::catalog::{blowup_twisted_cubic, blowup_veronese, del_pezzo, law_for, projective, DelPezzoBase};
use orient::constructions::{
    blowup_full, blowup_surjective, point_algebra, projective_bundle, projective_space, verify_blowup_axioms,
    BlowupData, BlowupResult, ConstructionError,
};
use orient::fgl::{FormalGroupLaw, Theory};
use orient::symbolic::{parse_poly, VarContext};

const THEORIES: [Theory; 3] = [Theory::Universal, Theory::Chow, Theory::KTheory];

fn in_algebra(alg: &GradedFreeAlgebra, s: &str, vars: &[(&str, i32)]) -> Element {
    alg.eval_poly(&poly(s, vars), &alg.name_assignment()).unwrap()
}

/// A linear `P^2` inside `P^4`: `i^* alpha = eta`, `i_* eta^k = alpha^(k+2)`
/// and normal bundle `O(1)^2`.
fn linear_plane(theory: &Theory, chern2: &str) -> BlowupData {
    let law = law_for(theory, 4).unwrap();
    let x = projective_space(&law, 4, "alpha").unwrap().algebra;
    let z = projective_space(&law, 2, "eta").unwrap().algebra;
    let eta = z.class("eta");
    let pull = (0..5).map(|k| z.pow(&eta, k)).collect();
    let push = (0..3).map(|k| x.pow(&x.class("alpha"), k + 2)).collect();
    let vars = [("eta", 1)];
    let chern = vec![in_algebra(&z, "2*eta", &vars), in_algebra(&z, chern2, &vars)];
    BlowupData::new(x, z, pull, push, chern).unwrap()
}

fn p4_presentation(theory: &Theory) -> Presentation {
    let ctx = VarContext::new().with("alpha", 1);
    Presentation::new(
        theory.scalar_ring(),
        vec![("alpha".into(), 1)],
        vec![parse_poly("alpha^5", &ctx).unwrap()],
    )
    .unwrap()
}

fn catalog_blowups(theory: &Theory) -> Vec<(&'static str, BlowupResult)> {
    vec![
        ("twisted cubic", blowup_twisted_cubic(theory).unwrap().blowup),
        ("veronese", blowup_veronese(theory).unwrap().blowup),
        ("linear plane", blowup_full(linear_plane(theory, "eta^2")).unwrap()),
        (
            "point of P^2",
            del_pezzo(theory, 1, DelPezzoBase::P2).unwrap().steps[0].full.clone(),
        ),
    ]
}

#[test]
fn point_algebras() {
    for t in THEORIES {
        let law = FormalGroupLaw::for_theory(&t, 1).unwrap();
        let pt = point_algebra(&law);
        assert_eq!(pt.rank(), 1);
        assert_eq!(pt.point_class(), Some(0));
    }
    assert_eq!(Theory::Universal.scalar_ring(), "ZZ[a_ij]");
    assert_eq!(Theory::KTheory.scalar_ring(), "ZZ[b, b^-1]");
}

#[test]
fn projective_space_as_a_bundle_over_a_point() {
    for t in THEORIES {
        let law = law_for(&t, 4).unwrap();
        let pt = Arc::new(point_algebra(&law));
        let bundle = projective_bundle(pt.clone(), &vec![pt.zero(); 4], "alpha").unwrap();
        let direct = projective_space(&law, 3, "alpha").unwrap();
        assert_eq!(bundle.algebra.packed_table(), direct.algebra.packed_table());
        let a = &bundle.algebra;
        assert!(a.pow(&bundle.zeta, 4).is_zero());
        assert!(!a.pow(&bundle.zeta, 3).is_zero());
    }
}

#[test]
fn bundle_of_two_quintic_lines() {
    let law = FormalGroupLaw::universal(2);
    let p1 = projective_space(&law, 1, "eta").unwrap();
    let z = p1.algebra.clone();
    let eta = z.class("eta");
    let bundle = projective_bundle(z.clone(), &[eta.scale_int(10), z.zero()], "zeta").unwrap();
    let a = &bundle.algebra;
    let zeta = &bundle.zeta;
    let rel = &a.mul(zeta, zeta) + &a.mul(&bundle.pull(&eta), zeta).scale_int(10);
    assert!(rel.is_zero());
    assert!(bundle.relation().is_zero());
}

#[test]
fn veronese_exceptional_divisor() {
    let v = blowup_veronese(&Theory::Universal).unwrap();
    let e = &v.blowup.exceptional;
    let z = &v.center.algebra;
    let vars = [("eta", 1)];
    let want = [
        in_algebra(z, "9*eta + 6*a11*eta^2", &vars),
        in_algebra(z, "30*eta^2", &vars),
        z.zero(),
    ];
    assert_eq!(v.blowup.data.normal_chern, want);
    let a = &e.algebra;
    let zeta = &e.zeta;
    let eta = e.pull(&z.class("eta"));
    let rel = &(&a.pow(zeta, 3) + &a.mul(&e.pull(&want[0]), &a.pow(zeta, 2))) + &a.mul(&e.pull(&want[1]), zeta);
    assert!(rel.is_zero());
    let eta2zeta2 = a.mul(&a.pow(&eta, 2), &a.pow(zeta, 2));
    assert_eq!(a.pow(zeta, 4), eta2zeta2.scale_int(51));
    assert!(a.pow(zeta, 5).is_zero());
}

#[test]
fn bundles_reject_inhomogeneous_chern_classes() {
    let law = FormalGroupLaw::universal(2);
    let z = projective_space(&law, 2, "eta").unwrap().algebra;
    let bad = z.one();
    assert!(matches!(
        projective_bundle(z.clone(), &[bad], "zeta"),
        Err(ConstructionError::Input(_))
    ));
    assert!(projective_bundle(z, &[], "zeta").is_err());
}

#[test]
fn blowup_axioms_hold_everywhere() {
    for t in THEORIES {
        for (name, res) in catalog_blowups(&t) {
            let report = verify_blowup_axioms(&res);
            assert!(report.passed(), "{name} in {}: {:?}", t.name(), report.families);
            let (x, z) = (&res.data.ambient, &res.data.center);
            assert_eq!(
                res.algebra.total_rank(),
                x.total_rank() + (res.codimension() - 1) * z.total_rank(),
                "{name}"
            );
        }
    }
}

#[test]
fn blowup_basics() {
    for (name, res) in catalog_blowups(&Theory::Universal) {
        let e = &res.exceptional;
        assert!(res.push_j(&e.algebra.zero()).unwrap().is_zero(), "{name}");
        assert_eq!(res.pi(&res.data.ambient.one()), res.algebra.one(), "{name}");
        assert_eq!(res.push_j(&e.algebra.one()).unwrap(), res.exceptional_divisor, "{name}");
        res.pi_pull.check_ring_hom().unwrap();
    }
}

/// `j_* gamma * j_* delta` from the table equals the one-shot relation
/// `j_*(gamma delta chi(zeta))`.
#[test]
fn exceptional_products_two_ways() {
    for t in THEORIES {
        for (name, res) in catalog_blowups(&t) {
            let e = &res.exceptional;
            let ea = &e.algebra;
            let bl = &res.algebra;
            for g in 0..ea.rank() {
                for d in 0..=g {
                    let (gamma, delta) = (ea.basis_element(g), ea.basis_element(d));
                    let table = bl.mul(&res.push_j(&gamma).unwrap(), &res.push_j(&delta).unwrap());
                    let direct = res
                        .push_j(&ea.mul(&ea.mul(&gamma, &delta), &res.chi_zeta))
                        .unwrap();
                    assert_eq!(table, direct, "{name} {g} {d}");
                }
            }
        }
    }
}

/// `pi^* i_* theta = j_*(c_{r-1}(Q) p^* theta)` on a basis of `A(Z)`.
#[test]
fn excess_relation() {
    for t in THEORIES {
        for (name, res) in catalog_blowups(&t) {
            let z = &res.data.center;
            let e = &res.exceptional;
            for b in 0..z.rank() {
                let theta = z.basis_element(b);
                let lhs = res.pi(&res.data.i_push.apply(&theta));
                let rhs = res
                    .push_j(&e.algebra.mul(&res.excess_class, &e.pull(&theta)))
                    .unwrap();
                assert_eq!(lhs, rhs, "{name} in {}", t.name());
            }
            // top zeta-coefficient of the excess class is 1 plus nilpotents
            let parts = e.components(&res.excess_class);
            assert_eq!(parts.len(), res.codimension());
            let top = &parts[res.codimension() - 1];
            assert!(top.coefficient(z.unit_index()).is_one(), "{name}");
        }
    }
}

#[test]
fn corrupted_chern_classes_are_caught() {
    let data = linear_plane(&Theory::Universal, "2*eta^2");
    assert!(matches!(data.validate(), Err(ConstructionError::SelfIntersection(_))));
    assert!(matches!(blowup_full(data), Err(ConstructionError::SelfIntersection(_))));
}

#[test]
fn codimension_one_is_rejected() {
    let law = FormalGroupLaw::universal(2);
    let x = projective_space(&law, 2, "h").unwrap().algebra;
    let z = projective_space(&law, 1, "eta").unwrap().algebra;
    let eta = z.class("eta");
    let pull = vec![z.one(), eta.clone(), z.zero()];
    let push = vec![x.class("h"), x.pow(&x.class("h"), 2)];
    let res = BlowupData::new(x, z, pull, push, vec![eta]).and_then(blowup_full);
    assert!(matches!(res, Err(ConstructionError::Input(_))));
}

/// `c_1` in the coordinate `-chi(zeta)`, lifted along `eta -> alpha`.
fn corrected_lift(data: &BlowupData) -> Element {
    let full = blowup_full(data.clone()).unwrap();
    let c1 = &full.normal_chern[0];
    let x = &data.ambient;
    let alpha = x.class("alpha");
    (0..3).fold(x.zero(), |acc, k| &acc + &x.pow(&alpha, k as u32).scale(c1.coefficient(k)))
}

/// Two lifts of `c_1` differing by a kernel element give the same ring.
#[test]
fn surjective_presentations_agree_with_the_full_one() {
    for t in THEORIES {
        let mut tables = Vec::new();
        for extra in ["0", "a12*alpha^3"] {
            let data = linear_plane(&t, "eta^2");
            let x = data.ambient.clone();
            let spec = orient::catalog::theory_specialization(&t).unwrap();
            let shift = x
                .eval_poly(&spec.apply(&poly(extra, &[("alpha", 1)])).unwrap(), &x.name_assignment())
                .unwrap();
            let l = &corrected_lift(&data) + &shift;
            let s = blowup_surjective(data, &p4_presentation(&t), "T", &[l], None).unwrap();
            s.iso.check_ring_hom().unwrap();
            assert!(is_graded_iso(&s.iso), "{extra}");
            assert_eq!(s.iso.apply(&s.generator), s.full.exceptional_divisor);
            assert!(s.presentation.first_failure(&s.algebra).unwrap().is_none());
            tables.push(s.algebra.packed_table().to_vec());
        }
        assert_eq!(tables[0], tables[1]);
    }
}

#[test]
fn corrected_classes_match_in_chow() {
    let data = linear_plane(&Theory::Chow, "eta^2");
    let full = blowup_full(data.clone()).unwrap();
    assert_eq!(full.normal_chern, data.normal_chern);
}

#[test]
fn surjective_rejects_bad_lifts() {
    let data = linear_plane(&Theory::Universal, "eta^2");
    let x = data.ambient.clone();
    let wrong = x.class("alpha");
    assert!(matches!(
        blowup_surjective(data, &p4_presentation(&Theory::Universal), "T", &[wrong], None),
        Err(ConstructionError::BadLift(_))
    ));
}

#[test]
fn surjective_rejects_the_twisted_cubic() {
    let tc = blowup_twisted_cubic(&Theory::Universal).unwrap();
    let data = tc.blowup.data.clone();
    let lift = data.ambient.zero();
    let ctx = VarContext::new().with("alpha", 1);
    let p3 = Presentation::new("ZZ[a_ij]", vec![("alpha".into(), 1)], vec![parse_poly("alpha^4", &ctx).unwrap()])
        .unwrap();
    // c_1 = 10 eta has no lift since i^* alpha = 3 eta
    let res = blowup_surjective(data, &p3, "T", &[lift], None);
    assert!(matches!(res, Err(ConstructionError::BadLift(_)) | Err(ConstructionError::NotSurjective(_))));
}

#[test]
fn del_pezzo_steps_are_isomorphic_to_the_full_construction() {
    for t in THEORIES {
        let dp = del_pezzo(&t, 3, DelPezzoBase::P2).unwrap();
        for s in &dp.steps {
            assert!(is_graded_iso(&s.iso));
            s.iso.check_ring_hom().unwrap();
        }
    }
    let p2 = projective(&Theory::Universal, 2, "h").unwrap();
    assert_eq!(p2.algebra.total_rank(), 3);
}
