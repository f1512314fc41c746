mod common;

use common::{rng, sig_for, standard};
use superreal_core::lie::random_point;
use superreal_core::real_structures::VerifyOptions;
use superreal_core::supergroups::*;
use superreal_core::{AlgebraKind, Conjugation, Error, FunctorPoint, Status, SuperMatrix};

fn groups() -> Vec<GroupKind> {
    ["SL(2|1)", "SL(2|2)", "SL(1|1)", "OSp(1|2)", "OSp(2|2)"].iter().map(|s| GroupKind::parse(s).unwrap()).collect()
}

#[test]
fn membership_examples() {
    let sig = standard(1);
    let sl11 = GroupKind::sl(1, 1).unwrap();
    for g in groups() {
        assert!(membership(&g, &SuperMatrix::identity(g.shape(), sig)).unwrap(), "{g}");
    }
    let two_two = SuperMatrix::parse(sig, "shape 1|1 [[(2), (0)],[(0), (2)]]").unwrap();
    let two_one = SuperMatrix::parse(sig, "shape 1|1 [[(2), (0)],[(0), (1)]]").unwrap();
    assert!(membership(&sl11, &two_two).unwrap());
    assert!(!membership(&sl11, &two_one).unwrap());
    let single_odd = SuperMatrix::parse(sig, "shape 2|1 [[(1), (0), t1],[(0), (1), (0)],[(0), (0), (1)]]").unwrap();
    assert!(membership(&GroupKind::sl(2, 1).unwrap(), &single_odd).unwrap());
    let singular = SuperMatrix::parse(sig, "shape 1|1 [[(0), (0)],[(0), (1)]]").unwrap();
    assert!(matches!(membership(&sl11, &singular), Err(Error::NotInvertible(_))));
}

#[test]
fn samples_lie_in_the_group() {
    let sig = standard(2);
    for g in groups() {
        for i in 0..20 {
            let x = sample(&g, &sig, &mut rng(&format!("sample/{g}"), i)).unwrap();
            assert!(membership(&g, x.matrix()).unwrap());
            assert!(x.mul(&x.inverse().unwrap()).unwrap().matrix().is_identity());
        }
    }
}

#[test]
fn cayley_transform_lands_in_osp() {
    let sig = standard(2);
    let g = GroupKind::osp(2, 1).unwrap();
    let id = SuperMatrix::identity(g.shape(), sig);
    for i in 0..20 {
        let x = random_point(g.lie(), &sig, &mut rng("cayley", i), 3).into_matrix();
        let Ok(inv) = (&id + &x).invert() else { continue };
        assert!(membership(&g, &(&(&id - &x) * &inv)).unwrap());
    }
}

#[test]
fn lift_forms_follow_the_table() {
    let inverse_neg = ["Sigma1", "Sigma4", "Omega2"];
    for g in groups() {
        for d in GroupRealStructureDescriptor::enumerate(&g) {
            let family = d.name().split('(').next().unwrap().to_string();
            let expected = if inverse_neg.contains(&family.as_str()) { LiftForm::InverseNeg } else { LiftForm::Direct };
            assert_eq!(d.lift_form(), expected, "{}", d.full_name());
            assert_eq!(GroupRealStructureDescriptor::parse(&d.full_name()).unwrap(), d);
        }
    }
}

#[test]
fn every_lift_fixes_the_identity() {
    for g in groups() {
        for d in GroupRealStructureDescriptor::enumerate(&g) {
            let sig = sig_for(d.base().conjugation(), 1);
            let id = GroupElement::identity(g, sig);
            assert_eq!(d.eval(&id).unwrap(), id, "{}", d.full_name());
        }
    }
}

#[test]
fn omega2_keeps_a_nilpotent_torus_element_in_sl11() {
    let sig = sig_for(Conjugation::Graded, 1);
    let g = GroupKind::sl(1, 1).unwrap();
    let x = SuperMatrix::parse(sig, "shape 1|1 [[(1) + t1*t1~, (0)],[(0), (1) + t1*t1~]]").unwrap();
    let x = GroupElement::new(g, x).unwrap();
    for d in GroupRealStructureDescriptor::enumerate(&g) {
        if d.name().starts_with("Omega2") {
            assert!(membership(&g, d.eval(&x).unwrap().matrix()).unwrap());
        }
    }
}

#[test]
fn every_lift_is_a_group_real_structure() {
    for g in groups() {
        for d in GroupRealStructureDescriptor::enumerate(&g) {
            let sig = sig_for(d.base().conjugation(), 1);
            let report = verify_group_real_structure(&d, &sig, VerifyOptions::new(6, 5)).unwrap();
            for c in &report.checks {
                assert!(
                    c.status == Status::Pass || c.name == "interpretation",
                    "{} {}: {:?}",
                    d.full_name(),
                    c.name,
                    c.witness
                );
            }
        }
    }
}

#[test]
fn direct_lift_of_sigma1_is_rejected() {
    let d = GroupRealStructureDescriptor::parse("SL(2|1):Sigma1(1,1)").unwrap().with_lift_form(LiftForm::Direct);
    let sig = standard(1);
    let report = verify_group_real_structure(&d, &sig, VerifyOptions::new(5, 1)).unwrap();
    let mult = report.check("multiplicativity").unwrap();
    assert_eq!(mult.status, Status::Fail);
    assert!(mult.witness.is_some());
    assert!(!report.passed());
}

#[test]
fn lie_points_are_the_linearized_constraint() {
    for g in groups() {
        let sig = standard(1);
        let points = lie_points(&g, &sig, 4, 2).unwrap();
        let (v0, v1) = g.lie().dimension();
        // Grassmann algebra on one pair: two even and two odd monomials
        assert_eq!(points.len(), 2 * v0 + 2 * v1, "{g}");
        for p in &points {
            let m = p.point.matrix();
            if g.is_sl() {
                assert!(m.supertrace().is_zero());
            } else {
                let j = SuperMatrix::constant(g.shape(), sig, &g.lie().osp_form().unwrap()).unwrap();
                assert!((&(&m.supertranspose() * &j) + &(&j * m)).is_zero());
            }
        }
    }
}

#[test]
fn induced_structure_matches_the_lie_descriptor() {
    for g in groups() {
        for d in GroupRealStructureDescriptor::enumerate(&g) {
            let sig = sig_for(d.base().conjugation(), 1);
            let m = random_point(g.lie(), &sig, &mut rng("induced", 0), 3);
            assert_eq!(induced_phi(&d, &m).unwrap(), d.base().eval(&m).unwrap(), "{}", d.full_name());
        }
    }
}

#[test]
fn induced_structure_passes_the_commutator_identity() {
    for s in ["SL(2|1):Sigma1(1,1)", "SL(2|2):Sigma2", "SL(1|1):Omega3", "OSp(2|2):Xi1(1)", "OSp(1|2):Psi1(1,0)"] {
        let d = GroupRealStructureDescriptor::parse(s).unwrap();
        let sig = sig_for(d.base().conjugation(), 1);
        let report = induced_lie_structure(&d, &sig, VerifyOptions::new(5, 9)).unwrap();
        assert!(report.checks.iter().all(|c| c.status == Status::Pass), "{s}: {:?}", report.checks);
    }
}

#[test]
fn tangent_of_fixed_group_is_the_fixed_algebra() {
    for s in ["SL(2|2):Sigma2", "SL(1|1):Omega3", "SL(2|1):Omega2(2,1)", "OSp(2|2):Psi2"] {
        let d = GroupRealStructureDescriptor::parse(s).unwrap();
        for pairs in [0, 1] {
            let sig = sig_for(d.base().conjugation(), pairs);
            let report = fixed_tangent_check(&d, &sig, 4).unwrap();
            assert!(report.checks.iter().all(|c| c.status == Status::Pass), "{s}: {:?}", report.checks);
        }
    }
}

#[test]
fn elements_outside_the_group_are_rejected() {
    let sig = standard(0);
    let g = GroupKind::sl(1, 1).unwrap();
    let x = SuperMatrix::parse(sig, "shape 1|1 [[(2), (0)],[(0), (1)]]").unwrap();
    assert!(matches!(GroupElement::new(g, x), Err(Error::MembershipViolation(_))));
    assert!(GroupKind::from_lie(AlgebraKind::gl(1, 1).unwrap()).is_err());
    let _ = FunctorPoint::zero(*g.lie(), sig);
}
