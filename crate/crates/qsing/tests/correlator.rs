use exactalg::{rat, rint, Monomial, Rational};
use num_traits::Zero;
use qsing::cases::{a_potential, Case};
use qsing::correlator::{
    evaluate_frame, four_point_ogrr, frobenius_algebra, three_point, witten_degree_lookup, Gauge, Provenance,
};
use qsing::moduli::{
    boundary_node_decorations, bundle_degrees, classify_concavity, group_identity_holds, Concavity, CorrelatorFrame,
};
use qsing::statespace::StateSpace;
use qsing::QsingError;

fn class(h: &StateSpace, label: &str) -> usize {
    (0..h.dim()).find(|&i| h.label(i) == label).unwrap_or_else(|| panic!("no class {label}"))
}

fn space(tag: &str) -> StateSpace {
    Case::parse(tag).unwrap().state_space().unwrap()
}

#[test]
fn e7_three_point_values() {
    let h = space("E7");
    let c = |l: &str| class(&h, l);
    let tp = |k: [usize; 3], g| three_point(&h, g, k).unwrap();
    let e = tp([c("e1"), c("e2"), c("e7")], Gauge::PLUS);
    assert_eq!(e.value, rint(1));
    let e = tp([c("y^2*e0"), c("y^2*e0"), c("e1")], Gauge::PLUS);
    assert_eq!(e.value, rat(-1, 3));
    assert_eq!(e.provenance, Provenance::Pairing);
    let e = tp([c("e5"), c("e5"), c("y^2*e0")], Gauge::PLUS);
    assert_eq!((e.value, e.provenance), (rint(1), Provenance::CompositionSolve));
    assert_eq!(tp([c("e5"), c("e5"), c("y^2*e0")], Gauge::MINUS).value, rint(-1));
    // the concave NS products that are all 1
    for (a, b, d) in [("e2", "e4", "e4"), ("e2", "e2", "e7"), ("e4", "e5", "e2")] {
        let e = tp([c(a), c(b), c(d)], Gauge::PLUS);
        assert!(e.value.is_zero() || e.value == rint(1), "<{a},{b},{d}> = {}", e.value);
    }
}

#[test]
fn e7_witten_map_degree() {
    let s = Case::parse("E7").unwrap().sing;
    assert_eq!(witten_degree_lookup(&s, &[-2, 0]).unwrap(), -3);
    assert!(matches!(witten_degree_lookup(&s, &[-1, -1]), Err(QsingError::NotInRegistry(_))));
    let d = Case::parse("Dodd:7").unwrap().sing;
    assert_eq!(witten_degree_lookup(&d, &[-2, 0]).unwrap(), -2);
    let h = space("E7");
    let e5 = h.gamma(class(&h, "e5")).clone();
    let f = CorrelatorFrame::new(&h.sing.q, 0, vec![e5.clone(), e5.clone(), e5.clone(), e5]);
    assert_eq!(f.integer_degrees(), Some(vec![-2, 0]));
    assert_eq!(classify_concavity(&f), Concavity::IndexZero);
}

#[test]
fn four_point_values_by_ogrr() {
    let h = space("E7");
    let c = |l: &str| class(&h, l);
    assert_eq!(four_point_ogrr(&h, [c("e2"), c("e4"), c("e7"), c("e7")]).unwrap(), rat(1, 9));
    assert_eq!(four_point_ogrr(&h, [c("e5"), c("e5"), c("e2"), c("e8")]).unwrap(), rat(1, 3));
    assert_eq!(four_point_ogrr(&h, [c("e7"), c("e5"), c("e4"), c("e4")]).unwrap(), rat(-1, 9));

    let h = space("E6");
    let c = |l: &str| class(&h, l);
    assert_eq!(four_point_ogrr(&h, [c("e10"), c("e10"), c("e7"), c("e11")]).unwrap(), rat(1, 4));
    assert_eq!(four_point_ogrr(&h, [c("e5"), c("e5"), c("e2"), c("e2")]).unwrap(), rat(1, 3));

    let h = space("E8");
    let c = |l: &str| class(&h, l);
    assert_eq!(four_point_ogrr(&h, [c("e7"), c("e7"), c("e4"), c("e14")]).unwrap(), rat(1, 5));
    assert_eq!(four_point_ogrr(&h, [c("e11"), c("e11"), c("e11"), c("e14")]).unwrap(), rat(1, 3));

    for n in 2..=8u32 {
        let h = space(&format!("A:{n}"));
        let (e2, en) = (class(&h, "e2"), class(&h, &format!("e{n}")));
        assert_eq!(four_point_ogrr(&h, [e2, e2, en, en]).unwrap(), rat(1, n as i64 + 1), "A_{n}");
    }
}

#[test]
fn non_concave_and_ramond_frames_are_not_guessed() {
    let h = space("E7");
    let c = |l: &str| class(&h, l);
    assert!(matches!(four_point_ogrr(&h, [c("e5"), c("e5"), c("e5"), c("e5")]), Err(QsingError::NotConcave)));
    let y = c("y^2*e0");
    let n = h.dim();
    let mut seen = 0;
    for a in 0..n {
        for b in a..n {
            for d in b..n {
                let key = [y, a, b, d];
                if key.contains(&h.unit) {
                    continue;
                }
                let total = key.iter().fold(Rational::zero(), |acc, &i| acc + h.deg_w(i));
                let frame = CorrelatorFrame::new(&h.sing.q, 0, key.iter().map(|&i| h.gamma(i).clone()).collect());
                if total != (&h.sing.c_hat + rint(1)) * rint(2) || !frame.nonempty {
                    continue;
                }
                seen += 1;
                assert!(matches!(evaluate_frame(&h, Gauge::PLUS, &key), Err(QsingError::Unevaluable(_))));
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn frames_satisfy_the_group_rule() {
    for tag in ["E6", "E7", "E8", "DT:4", "Dodd:5", "D:4"] {
        let h = space(tag);
        let n = h.dim();
        for a in 0..n {
            for b in a..n {
                for d in b..n {
                    let ins = vec![h.gamma(a).clone(), h.gamma(b).clone(), h.gamma(d).clone()];
                    let f = CorrelatorFrame::new(&h.sing.q, 0, ins);
                    assert_eq!(f.nonempty, group_identity_holds(&h.group.j, &f), "{tag}");
                    if !three_point(&h, Gauge::PLUS, [a, b, d]).unwrap().value.is_zero() {
                        assert!(f.nonempty);
                    }
                }
            }
        }
    }
}

#[test]
fn boundary_channels_of_a_symmetric_frame_merge() {
    let h = space("E7");
    let e5 = h.gamma(class(&h, "e5")).clone();
    let f = CorrelatorFrame::new(&h.sing.q, 0, vec![e5.clone(), e5.clone(), e5.clone(), e5]);
    let ch = boundary_node_decorations(&h.sing.q, &f, Some(&h.group)).unwrap();
    assert_eq!(ch.len(), 1);
    assert_eq!(ch[0].multiplicity, 3);
    assert_eq!(bundle_degrees(&h.sing.q, 0, &f.insertions), vec![rint(-2), rint(0)]);
}

#[test]
fn products_are_associative_with_unit() {
    for tag in ["A:4", "D:3", "D:5", "Dodd:5", "DT:3", "DT:5", "E6", "E7", "E8"] {
        let h = space(tag);
        for g in [Gauge::PLUS, Gauge::MINUS] {
            let (alg, table) = frobenius_algebra(&h, g).unwrap();
            assert!(alg.is_associative(), "{tag}");
            assert!(alg.unit_acts_trivially(), "{tag}");
            assert!(!table.is_empty());
        }
    }
}

#[test]
fn d_odd_products_of_e3() {
    for n in [5u32, 7, 9] {
        let h = space(&format!("Dodd:{n}"));
        let (alg, _) = frobenius_algebra(&h, Gauge::PLUS).unwrap();
        let e = |k: u32| alg.basis_vector(class(&h, &format!("e{k}")));
        let x = e(3);
        for l in 1..n {
            let p = alg.power(&x, l);
            let want: Vec<Rational> = if l < (n - 1) / 2 {
                e(2 * l + 1)
            } else if l >= n.div_ceil(2) {
                e(2 * l - n + 1).iter().map(|v| v * rint(-2)).collect()
            } else {
                continue;
            };
            assert_eq!(p, want, "Dodd:{n} e3^{l}");
        }
    }
}

#[test]
fn e7_quartic_part_of_the_a_potential() {
    let c = Case::parse("E7").unwrap();
    let a = c.a_model(Gauge::PLUS).unwrap();
    let f = a_potential(&a, 5).unwrap();
    let t = |l: &str| a.pres.alg.labels.iter().position(|x| x == l).unwrap();
    let coeff = |ks: &[&str]| {
        let mut e = vec![0u32; a.pres.alg.dim()];
        for k in ks {
            e[t(k)] += 1;
        }
        f.poly.coeff(&Monomial(e))
    };
    assert_eq!(coeff(&["T6", "T6", "T3", "T4"]), rat(1, 18));
    assert_eq!(coeff(&["T7", "T7", "T4", "T1"]), rat(1, 6));
    assert_eq!(coeff(&["T6", "T7", "T3", "T3"]), rat(-1, 18));
    assert_eq!(coeff(&["T9", "T9", "T1"]), rat(1, 2));
    // five-point correlators reduce to the basics
    assert!(!f.part(5).is_zero());
}

#[test]
fn a2_has_a_quartic_term() {
    // ĉ = 1/3 and deg X = 1/3, so ⟨X,X,X,X⟩ passes the dimension rule
    let c = Case::parse("A:2").unwrap();
    let a = c.a_model(Gauge::PLUS).unwrap();
    let f = a_potential(&a, 4).unwrap();
    assert_eq!(f.correlator(&[1, 1, 1, 1]), rat(1, 3));
}

#[test]
fn missing_basics_are_reported() {
    let c = Case::parse("E7").unwrap();
    let a = c.a_model(Gauge::PLUS).unwrap();
    let mut w = qsing::correlator::Wdvv::new(&a.pres, Vec::new());
    let key = a.basics[0].0.clone();
    assert!(matches!(w.eval(&key), Err(QsingError::MissingBasic(_))));
}
