//! Reconstruction of genus-zero correlators from three-point data and basic
//! four-point values via WDVV.

use std::collections::{BTreeMap, HashMap, HashSet};

use exactalg::{rint, Monomial, Poly, Rational};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::{factorial, FrobeniusAlgebra, MonomialPresentation, PotentialSeries};
use super::amodel::multilinear;
use crate::error::{QsingError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Choice {
    a: usize,
    b: usize,
    c: usize,
    eps: usize,
    phi: usize,
}

type Direct<'a> = Box<dyn FnMut(&[usize]) -> Result<Rational> + 'a>;

pub struct Wdvv<'a> {
    pres: &'a MonomialPresentation,
    basics: BTreeMap<Vec<usize>, Rational>,
    memo: HashMap<Vec<usize>, Rational>,
    active: HashSet<Vec<usize>>,
    rng: Option<ChaCha8Rng>,
    direct: Option<Direct<'a>>,
}

const CYCLE: &str = "reduction cycle";

impl<'a> Wdvv<'a> {
    pub fn new(pres: &'a MonomialPresentation, basics: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Self {
        let basics = basics
            .into_iter()
            .map(|(mut k, v)| {
                k.sort_unstable();
                (k, v)
            })
            .collect();
        Wdvv { pres, basics, memo: HashMap::new(), active: HashSet::new(), rng: None, direct: None }
    }

    /// Shuffle the reduction choices with a seeded generator.
    pub fn randomized(mut self, seed: u64) -> Self {
        self.rng = Some(ChaCha8Rng::seed_from_u64(seed));
        self
    }

    /// Consult `f` before reducing; keys it cannot evaluate fall through to WDVV.
    pub fn with_direct(mut self, f: impl FnMut(&[usize]) -> Result<Rational> + 'a) -> Self {
        self.direct = Some(Box::new(f));
        self
    }

    pub fn alg(&self) -> &FrobeniusAlgebra {
        &self.pres.alg
    }

    fn describe(&self, key: &[usize]) -> String {
        format!("<{}>", key.iter().map(|&i| self.pres.alg.labels[i].clone()).collect::<Vec<_>>().join(", "))
    }

    pub fn dimension_ok(&self, key: &[usize]) -> bool {
        let pres: &'a MonomialPresentation = self.pres;
        let alg = &pres.alg;
        let total = key.iter().fold(Rational::zero(), |acc, &i| acc + &alg.degrees[i]);
        total == &alg.c_hat + rint(key.len() as i64 - 3)
    }

    pub fn eval(&mut self, key: &[usize]) -> Result<Rational> {
        let pres: &'a MonomialPresentation = self.pres;
        let alg = &pres.alg;
        if key.len() < 3 {
            return Err(QsingError::InvalidArgument("correlators need at least three insertions".into()));
        }
        if key.len() == 3 {
            return Ok(alg.c3(key[0], key[1], key[2]).clone());
        }
        if key.contains(&alg.unit) || !self.dimension_ok(key) {
            return Ok(Rational::zero());
        }
        let mut k = key.to_vec();
        k.sort_unstable();
        if let Some(v) = self.basics.get(&k) {
            return Ok(v.clone());
        }
        if let Some(v) = self.memo.get(&k) {
            return Ok(v.clone());
        }
        if let Some(f) = self.direct.as_mut() {
            if let Ok(v) = f(&k) {
                self.memo.insert(k, v.clone());
                return Ok(v);
            }
        }
        if !self.active.insert(k.clone()) {
            return Err(QsingError::Unevaluable(CYCLE.into()));
        }
        let (preferred, fallback) = self.choices(&k);
        let mut result = None;
        for ch in preferred.into_iter().chain(fallback) {
            if let Ok(v) = self.reduce(&k, ch) {
                result = Some(v);
                break;
            }
        }
        self.active.remove(&k);
        match result {
            Some(v) => {
                self.memo.insert(k, v.clone());
                Ok(v)
            }
            None => Err(QsingError::MissingBasic(self.describe(&k))),
        }
    }

    pub fn eval_vectors(&mut self, vecs: &[Vec<Rational>]) -> Result<Rational> {
        multilinear(vecs, |k| self.eval(k))
    }

    /// The value obtained from each admissible first reduction step of `key`.
    pub fn values_per_choice(&mut self, key: &[usize]) -> Vec<Result<Rational>> {
        let mut k = key.to_vec();
        k.sort_unstable();
        let (p, f) = self.choices(&k);
        p.into_iter().chain(f).map(|ch| self.reduce(&k, ch)).collect()
    }

    /// Preferred choices keep the two largest-degree insertions as α, β and
    /// factor a non-primitive insertion outside them, which strictly lowers the
    /// total degree outside the top two. Other choices are kept as fallback.
    fn choices(&mut self, key: &[usize]) -> (Vec<Choice>, Vec<Choice>) {
        let pres: &'a MonomialPresentation = self.pres;
        let alg = &pres.alg;
        let k = key.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&x, &y| alg.degrees[key[y]].cmp(&alg.degrees[key[x]]).then(x.cmp(&y)));
        let (a0, b0) = (order[0], order[1]);
        let mut preferred = Vec::new();
        let mut fallback = Vec::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    for (eps, phi) in pres.factorizations(key[c]) {
                        let ch = Choice { a, b, c, eps, phi };
                        if (a, b) == (a0, b0) {
                            preferred.push(ch);
                        } else {
                            fallback.push(ch);
                        }
                    }
                }
            }
        }
        if let Some(rng) = self.rng.as_mut() {
            preferred.shuffle(rng);
            fallback.shuffle(rng);
        }
        (preferred, fallback)
    }

    /// ⟨S,α,β,ε⋆φ⟩ = ⟨S,α,ε,β⋆φ⟩ + ⟨S,α⋆ε,β,φ⟩ − ⟨S,α⋆β,ε,φ⟩
    ///   + Σ_{I⊔J=S, I,J≠∅} (⟨α,ε,I,μ⟩η^{μν}⟨ν,β,φ,J⟩ − ⟨α,β,I,μ⟩η^{μν}⟨ν,ε,φ,J⟩)
    fn reduce(&mut self, key: &[usize], ch: Choice) -> Result<Rational> {
        let pres: &'a MonomialPresentation = self.pres;
        let alg = &pres.alg;
        let e = |i: usize| alg.basis_vector(i);
        let (al, be) = (key[ch.a], key[ch.b]);
        let s: Vec<usize> = (0..key.len()).filter(|&p| p != ch.a && p != ch.b && p != ch.c).map(|p| key[p]).collect();
        let with_s = |extra: Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
            let mut v: Vec<Vec<Rational>> = s.iter().map(|&i| e(i)).collect();
            v.extend(extra);
            v
        };
        let t1 = with_s(vec![e(al), e(ch.eps), alg.basis_product(be, ch.phi).to_vec()]);
        let t2 = with_s(vec![alg.basis_product(al, ch.eps).to_vec(), e(be), e(ch.phi)]);
        let t3 = with_s(vec![alg.basis_product(al, be).to_vec(), e(ch.eps), e(ch.phi)]);
        let eta_inv = alg.eta_inv.clone();
        let n = alg.dim();
        let mut total = self.eval_vectors(&t1)? + self.eval_vectors(&t2)? - self.eval_vectors(&t3)?;
        let m = s.len();
        for mask in 1..(1u32 << m).saturating_sub(1) {
            let i_part: Vec<usize> = (0..m).filter(|&x| mask & (1 << x) != 0).map(|x| s[x]).collect();
            let j_part: Vec<usize> = (0..m).filter(|&x| mask & (1 << x) == 0).map(|x| s[x]).collect();
            for (sign, (p1, p2), (p3, p4)) in [(1i64, (al, ch.eps), (be, ch.phi)), (-1, (al, be), (ch.eps, ch.phi))] {
                let mut left = vec![Rational::zero(); n];
                for (mu, l) in left.iter_mut().enumerate() {
                    let mut k1 = vec![p1, p2, mu];
                    k1.extend(&i_part);
                    *l = self.eval(&k1)?;
                }
                for nu in 0..n {
                    let w = (0..n).fold(Rational::zero(), |acc, mu| acc + &left[mu] * &eta_inv.data[mu][nu]);
                    if w.is_zero() {
                        continue;
                    }
                    let mut k2 = vec![nu, p3, p4];
                    k2.extend(&j_part);
                    total += w * self.eval(&k2)? * rint(sign);
                }
            }
        }
        Ok(total)
    }
}

/// F = Σ_k Σ_{multisets} ⟨...⟩ Π t / Π(multiplicity!), through order `order`.
pub fn genus_zero_potential(
    alg: &FrobeniusAlgebra,
    order: usize,
    mut corr: impl FnMut(&[usize]) -> Result<Rational>,
) -> Result<PotentialSeries> {
    if order < 3 {
        return Err(QsingError::InvalidArgument("potential order must be at least 3".into()));
    }
    let n = alg.dim();
    let mut poly = Poly::zero(n);
    for k in 3..=order {
        let mut key = vec![0usize; k];
        loop {
            let total = key.iter().fold(Rational::zero(), |acc, &i| acc + &alg.degrees[i]);
            if total == &alg.c_hat + rint(k as i64 - 3) {
                let v = if k == 3 { alg.c3(key[0], key[1], key[2]).clone() } else { corr(&key)? };
                if !v.is_zero() {
                    let mut e = vec![0u32; n];
                    for &i in &key {
                        e[i] += 1;
                    }
                    let sym = e.iter().fold(rint(1), |acc, &m| acc * factorial(m));
                    poly.add_term(Monomial(e), v / sym);
                }
            }
            // next nondecreasing key
            let mut p = k;
            while p > 0 && key[p - 1] == n - 1 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            key[p - 1] += 1;
            let v = key[p - 1];
            for x in key.iter_mut().skip(p) {
                *x = v;
            }
        }
    }
    Ok(PotentialSeries { order, poly, labels: alg.labels.clone(), degrees: alg.degrees.clone() })
}
