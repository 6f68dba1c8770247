use std::collections::BTreeSet;

use crate::poly::{Monomial, Poly};

/// Full reduction of `f` by `gb` (every term, not just the leading one).
pub fn normal_form(f: &Poly, gb: &[Poly]) -> Poly {
    let n = f.nvars();
    let mut p = f.clone();
    let mut r = Poly::zero(n);
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let div = gb.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match div {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = lm.quotient_of(&m);
                p = &p - &g.mul_term(&q, &(&c / lc));
            }
            None => {
                let t = Poly::term(m, c);
                p = &p - &t;
                r = &r + &t;
            }
        }
    }
    r
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    &f.mul_term(&fm.quotient_of(&l), &fc.recip()) - &g.mul_term(&gm.quotient_of(&l), &gc.recip())
}

/// Reduced Gröbner basis under grevlex, monic, sorted by leading monomial.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if basis.is_empty() {
        return basis;
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        let (a, b) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if a.coprime(b) {
            continue;
        }
        let h = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(h.monic());
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    reduce(basis)
}

fn reduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Poly> = Vec::new();
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in basis {
        let lm = g.leading_monomial().unwrap().clone();
        if keep.iter().any(|k| k.leading_monomial().unwrap().divides(&lm)) {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let (lm, _) = keep[i].leading().unwrap();
        let tail = &keep[i] - &Poly::term(lm.clone(), keep[i].leading().unwrap().1.clone());
        let t = normal_form(&tail, &others);
        out.push(&Poly::term(lm.clone(), num_traits::One::one()) + &t);
    }
    out
}

/// Monomials outside the leading-term ideal, ascending in grevlex.
/// `None` if the quotient is infinite-dimensional.
pub fn standard_monomials(gb: &[Poly], nvars: usize) -> Option<Vec<Monomial>> {
    let lms: Vec<&Monomial> = gb.iter().filter_map(|g| g.leading_monomial()).collect();
    if lms.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let mut bound = vec![0u32; nvars];
    for (i, b) in bound.iter_mut().enumerate() {
        let pure = lms
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(j, e)| j == i || *e == 0))
            .map(|m| m.0[i])
            .min()?;
        *b = pure;
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    loop {
        let m = Monomial(e.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box [0, bound)
        let mut k = 0;
        loop {
            if k == nvars {
                out.sort();
                return Some(out);
            }
            e[k] += 1;
            if e[k] < bound[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}
