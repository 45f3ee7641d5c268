use std::collections::BTreeSet;

use hf_core::classify::{
    classify, component_membership, s4_relabel, Case, ClassifyError, H24Point, Relabeling,
};
use hf_core::elliptic::{sweep, weierstrass_j, WeierstrassCurve};
use hf_core::field::{Field, FieldElem, P1Point};
use hf_core::legendre::{
    char2_singular_point, fixed_points, j_from_lambda, lambda_orbit, singularity_type,
    Involution, LegendreCurve, SingularityKind,
};
use rand::{Rng, SeedableRng};

fn nondegenerate(f: Field) -> Vec<FieldElem> {
    f.elements()
        .unwrap()
        .filter(|l| !l.is_zero() && !l.is_one())
        .collect()
}

#[test]
fn j_agrees_with_weierstrass_over_q() {
    let q = Field::rationals();
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6a);
    let mut done = 0;
    while done < 100 {
        let l = q.rational(rng.gen_range(-500..500), rng.gen_range(1..500)).unwrap();
        if l.is_zero() || l.is_one() {
            continue;
        }
        let j = j_from_lambda(&l).unwrap();
        assert_eq!(weierstrass_j(&WeierstrassCurve::legendre(&l).unwrap()), j);
        for v in lambda_orbit(&l).unwrap().values {
            assert_eq!(j_from_lambda(&v).unwrap(), j);
        }
        done += 1;
    }
}

#[test]
fn j_agrees_and_is_orbit_invariant_over_odd_fields() {
    for (p, k) in [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (3, 2), (5, 2), (3, 3)] {
        let f = Field::new(p, k).unwrap();
        for l in nondegenerate(f) {
            let j = j_from_lambda(&l).unwrap();
            assert_eq!(weierstrass_j(&WeierstrassCurve::legendre(&l).unwrap()), j, "{f} λ={l}");
            for v in lambda_orbit(&l).unwrap().values {
                assert_eq!(j_from_lambda(&v).unwrap(), j);
            }
        }
    }
}

#[test]
fn char2_legendre_analysis() {
    for k in 2..=4 {
        let f = Field::new(2, k).unwrap();
        for l in nondegenerate(f) {
            let root = l.sqrt_char2().unwrap();
            let curve = LegendreCurve::new(l.clone()).unwrap();
            let sp = char2_singular_point(&curve).unwrap();
            assert_eq!(sp.x, root);
            assert_eq!(sp.y, &l + &root);
            assert!(sp.certificate.holds());
            assert_eq!(sp.certificate.affine_singular_points, Some(1));
            assert_eq!(singularity_type(&curve).unwrap().kind, SingularityKind::NonNode);
            for which in [Involution::Inv, Involution::Cross] {
                let fp = fixed_points(which, &l).unwrap();
                assert_eq!(fp.rational, vec![P1Point::Finite(root.clone())]);
                assert_eq!(fp.geometric_count, 1);
                assert!(fp.poles_avoided);
            }
        }
    }
}

#[test]
fn supersingular_iff_j_zero_iff_no_two_torsion() {
    for k in 1..=2 {
        let f = Field::new(2, k).unwrap();
        let rows = sweep(f, |e| {
            (
                e.is_supersingular().unwrap(),
                weierstrass_j(e).is_zero(),
                e.two_torsion_count().unwrap() == 0,
            )
        })
        .unwrap();
        assert!(rows.iter().any(|r| r.0) && rows.iter().any(|r| !r.0));
        for (ss, j0, no_torsion) in rows {
            assert_eq!(ss, j0);
            assert_eq!(ss, no_torsion);
        }
    }
}

#[test]
fn classifier_soundness() {
    for k in [2, 3] {
        let f = Field::new(2, k).unwrap();
        let mut cases = BTreeSet::new();
        for p in H24Point::all(f).unwrap() {
            let on_fiber = p.lambda_s().is_infinity()
                || p.lambda_s().is_value(0)
                || p.lambda_s().is_value(1)
                || p.j_s().is_value(0);
            match classify(&p) {
                Ok(r) => {
                    assert!(on_fiber);
                    assert!(!component_membership(&p).is_empty());
                    assert!(r.certificates.holds());
                    assert_eq!(r.source_component_count(), r.case.component_count());
                    assert_eq!(r.map_type.source().arithmetic_genus(), 1);
                    assert_eq!(r.map_type.target().arithmetic_genus(), 0);
                    if r.case == Case::Case1 {
                        let a = r.attachment.as_ref().unwrap();
                        let l = p.lambda_s().finite().unwrap().clone();
                        let sp = char2_singular_point(&LegendreCurve::new(l).unwrap()).unwrap();
                        assert!(a.certified);
                        assert_eq!((&a.x, &a.y), (&sp.x, &sp.y));
                    }
                    cases.insert(r.case);
                }
                Err(ClassifyError::NotOnFiber { .. }) => {
                    assert!(!on_fiber);
                    assert!(component_membership(&p).is_empty());
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(cases.len(), 4);
    }
}

#[test]
fn classifier_equivariance() {
    for k in [2, 3] {
        let f = Field::new(2, k).unwrap();
        for p in H24Point::all(f).unwrap() {
            for s in Relabeling::all() {
                match (classify(&p), classify(&p.relabel(&s))) {
                    (Ok(r), Ok(direct)) => {
                        let moved = s4_relabel(&r, &s).unwrap();
                        assert_eq!(moved.case, direct.case);
                        assert_eq!(moved.point, direct.point);
                        assert!(moved.map_type.is_isomorphic(&direct.map_type));
                        assert_eq!(moved.attachment, direct.attachment);
                    }
                    (Err(_), Err(_)) => {}
                    _ => panic!("relabeling moved {p:?} on or off the fiber"),
                }
            }
        }
    }
}
