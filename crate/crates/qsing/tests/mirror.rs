use exactalg::{rat, rint, Rational};
use num_traits::Zero;
use qsing::cases::{a_potential, Case, CaseId};
use qsing::correlator::{frobenius_algebra, Gauge};
use qsing::mirror::{match_potentials, verify_ring_isomorphism};
use qsing::saito::{bmodel_potential, rescale_potential};
use qsing::QsingError;

#[test]
fn case_tags_round_trip() {
    for t in ["A:2", "D:7", "Dodd:5", "DT:3", "E6", "E7", "E8"] {
        assert_eq!(CaseId::parse(t).unwrap().to_string(), t);
    }
    for t in ["A:1", "Dodd:4", "Dodd:3", "D:2", "E9", "DT", "A:x"] {
        assert!(matches!(CaseId::parse(t), Err(QsingError::UnknownFamily(_))), "{t}");
    }
}

#[test]
fn e7_ring_isomorphism() {
    let c = Case::parse("E7").unwrap();
    let a = c.a_model(Gauge::PLUS).unwrap();
    assert_eq!(a.iso.rho, rint(9));
    assert_eq!(a.iso.scaling.to_string(), "alpha^8 = 1/9");
    let h = &a.space;
    let cls = |l: &str| (0..h.dim()).find(|&i| h.label(i) == l).unwrap();
    let one = |i: usize| {
        let mut v = vec![Rational::zero(); h.dim()];
        v[i] = rint(1);
        v
    };
    assert_eq!(a.iso.images, vec![one(cls("e7")), one(cls("e5"))]);
}

#[test]
fn wrong_images_are_rejected() {
    let c = Case::parse("E7").unwrap();
    let h = c.state_space().unwrap();
    let (alg, _) = frobenius_algebra(&h, Gauge::PLUS).unwrap();
    let v = |l: &str| {
        let mut v = vec![Rational::zero(); h.dim()];
        v[(0..h.dim()).find(|&i| h.label(i) == l).unwrap()] = rint(1);
        v
    };
    // swapped generators have the wrong degrees
    assert!(matches!(verify_ring_isomorphism(&alg, &c.ring, &[v("e5"), v("e7")]), Err(QsingError::RelationFails(_))));
    // the right classes with a bad relative scale break 3X² + Y³ = 0
    let x2: Vec<Rational> = v("e7").into_iter().map(|c| c * rint(2)).collect();
    assert!(matches!(verify_ring_isomorphism(&alg, &c.ring, &[x2, v("e5")]), Err(QsingError::RelationFails(_))));
    assert!(verify_ring_isomorphism(&alg, &c.ring, &[v("e7")]).is_err());
}

#[test]
fn d_max_images_and_scaling() {
    for n in 3..=10u32 {
        let c = Case::parse(&format!("D:{n}")).unwrap();
        let a = c.a_model(Gauge::PLUS).unwrap();
        let h = &a.space;
        let y = (0..h.dim()).find(|&i| h.is_ramond(i)).unwrap();
        assert_eq!(h.label(y), "y*e0");
        let xn1 = c.ring.basis.iter().position(|m| m.0 == vec![n - 1, 0]).unwrap();
        let mut want = vec![Rational::zero(); h.dim()];
        want[y] = rint(-2);
        assert_eq!(a.iso.basis_images[xn1], want, "D:{n}");
        assert_eq!(a.iso.rho, rint(2 * n as i64), "D:{n}");
        assert_eq!(a.iso.scaling.exponent, 2 * n as u64 - 2);
        assert_eq!(a.iso.scaling.value, rat(1, 2 * n as i64));
    }
}

#[test]
fn measured_lambdas() {
    let expect = [("E6", -1, 12), ("E7", -1, 9), ("E8", -1, 15), ("DT:3", -1, 6), ("DT:6", -1, 12), ("Dodd:5", 4, -20), ("D:4", 4, -16)];
    for (tag, lambda, scale) in expect {
        let m = Case::parse(tag).unwrap().mirror_check(Gauge::PLUS).unwrap();
        assert!(m.verified, "{tag}");
        assert_eq!(m.lambda, rint(lambda), "{tag}");
        assert_eq!(m.b_scale, rint(scale), "{tag}");
    }
    for n in 2..=8u32 {
        let m = Case::parse(&format!("A:{n}")).unwrap().mirror_check(Gauge::PLUS).unwrap();
        assert_eq!((&m.lambda, &m.b_scale), (&rint(-1), &rint(n as i64 + 1)), "A:{n}");
        assert_eq!(m.agrees_with_claim(), None);
    }
    let e7 = Case::parse("E7").unwrap().mirror_check(Gauge::MINUS).unwrap();
    assert_eq!(e7.agrees_with_claim(), Some(true));
}

#[test]
fn rescaled_b_model_equals_the_a_model() {
    let c = Case::parse("E7").unwrap();
    let a = c.a_model(Gauge::PLUS).unwrap();
    let fa = a_potential(&a, 4).unwrap();
    let fb = rescale_potential(&c.b_potential(&a).unwrap(), &rint(-1)).unwrap();
    let m = match_potentials(&fa, &fb, &c.identification().unwrap()).unwrap();
    assert_eq!(m.lambda, rint(1));
}

#[test]
fn mismatched_normalizations_are_reported() {
    let c = Case::parse("E7").unwrap();
    let a = c.a_model(Gauge::PLUS).unwrap();
    let fa = a_potential(&a, 4).unwrap();
    let id = c.identification().unwrap();
    let wrong = bmodel_potential(&c.b_family, &rint(1)).unwrap();
    assert!(matches!(match_potentials(&fa, &wrong, &id), Err(QsingError::CubicMismatch(_))));
    let mut skew = c.b_potential(&a).unwrap();
    let (m, v) = skew.f4.poly.terms().next().map(|(m, v)| (m.clone(), v.clone())).unwrap();
    skew.f4.poly.add_term(m, v);
    assert!(matches!(match_potentials(&fa, &skew, &id), Err(QsingError::QuarticNotProportional(_))));
    assert!(matches!(match_potentials(&fa, &skew, &id[..3]), Err(QsingError::DimensionMismatch { .. })));
}
