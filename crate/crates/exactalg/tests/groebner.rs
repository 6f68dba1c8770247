use exactalg::{groebner_basis, normal_form, parse_polynomial, rat, standard_monomials, Monomial, Poly, RatMatrix};
use proptest::prelude::*;

fn p(s: &str) -> Poly {
    let v: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
    parse_polynomial(s, Some(&v)).unwrap().0
}

fn jac_e7() -> Vec<Poly> {
    vec![p("3*x^2 + y^3"), p("3*x*y^2")]
}

#[test]
fn trivial_bases() {
    assert_eq!(groebner_basis(&[p("x^2")]), vec![p("x^2")]);
    assert!(groebner_basis(&[]).is_empty());
    for n in 1..6 {
        let v = vec!["x".to_string()];
        let f = parse_polynomial(&format!("{}*x^{}", n + 1, n), Some(&v)).unwrap().0;
        let g = groebner_basis(&[f]);
        assert_eq!(g, vec![Poly::term(Monomial(vec![n]), rat(1, 1))]);
    }
}

#[test]
fn e7_quotient_has_dimension_seven() {
    let gb = groebner_basis(&jac_e7());
    let std = standard_monomials(&gb, 2).unwrap();
    assert_eq!(std.len(), 7);
    assert!(normal_form(&p("3*x^2 + y^3"), &gb).is_zero());
    assert_eq!(normal_form(&p("1"), &gb), p("1"));
}

/// Reduces y^4 by linear algebra on the span of monomials of degree ≤ 6:
/// y^4 - r lies in the ideal iff it is a combination of multiples of the generators.
#[test]
fn e7_y4_matches_linear_algebra_oracle() {
    let gb = groebner_basis(&jac_e7());
    let nf = normal_form(&p("y^4"), &gb);
    assert_eq!(nf.len(), 1);
    let (m, c) = nf.leading().unwrap();
    assert_eq!(*m, Monomial(vec![2, 1]));

    let top = 7u32;
    let monos: Vec<Monomial> = (0..=top)
        .flat_map(|a| (0..=top - a).map(move |b| Monomial(vec![a, b])))
        .collect();
    let mut cols: Vec<Poly> = Vec::new();
    for g in jac_e7() {
        for mm in &monos {
            let t = g.mul_term(mm, &rat(1, 1));
            if t.total_degree().unwrap() <= top {
                cols.push(t);
            }
        }
    }
    // unknowns: multipliers for each column, plus the coefficient k of x^2y
    let target = p("y^4");
    let x2y = p("x^2*y");
    let rows: Vec<Vec<exactalg::Rational>> = monos
        .iter()
        .map(|mm| {
            let mut r: Vec<_> = cols.iter().map(|c| c.coeff(mm)).collect();
            r.push(x2y.coeff(mm));
            r
        })
        .collect();
    let b: Vec<_> = monos.iter().map(|mm| target.coeff(mm)).collect();
    let sol = RatMatrix::from_rows(rows).solve(&b).unwrap();
    assert_eq!(sol.last().unwrap(), c);
    assert_eq!(*c, rat(-3, 1));
}

proptest! {
    #[test]
    fn normal_form_is_linear_and_idempotent(
        a in prop::collection::vec((0u32..7, 0u32..7, -9i64..9), 0..6),
        b in prop::collection::vec((0u32..7, 0u32..7, -9i64..9), 0..6),
        m in prop::collection::vec((0u32..4, 0u32..4, -9i64..9), 0..4),
    ) {
        let mk = |v: &Vec<(u32, u32, i64)>| Poly::from_terms(2, v.iter().map(|&(i, j, c)| (Monomial(vec![i, j]), rat(c, 1))));
        let (f, g, h) = (mk(&a), mk(&b), mk(&m));
        let gb = groebner_basis(&jac_e7());
        let nf = |q: &Poly| normal_form(q, &gb);
        prop_assert_eq!(nf(&(&f + &g)), &nf(&f) + &nf(&g));
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        let in_ideal = &(&h * &jac_e7()[0]) + &(&f * &jac_e7()[1]);
        prop_assert!(nf(&in_ideal).is_zero());
    }
}
