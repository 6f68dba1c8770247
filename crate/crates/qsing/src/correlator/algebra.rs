use std::collections::BTreeMap;

use exactalg::{rint, Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, Zero};

use crate::error::{QsingError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    DimensionZero,
    SelectionZero,
    Pairing,
    Concave,
    OGrr,
    IndexZeroRegistry,
    CompositionSolve,
    Wdvv,
    Tensor,
    Basic,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::DimensionZero => "dimension-zero",
            Provenance::SelectionZero => "selection-zero",
            Provenance::Pairing => "pairing",
            Provenance::Concave => "concave",
            Provenance::OGrr => "oGRR",
            Provenance::IndexZeroRegistry => "index-zero-registry",
            Provenance::CompositionSolve => "composition-solve",
            Provenance::Wdvv => "wdvv",
            Provenance::Tensor => "tensor",
            Provenance::Basic => "basic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub value: Rational,
    pub provenance: Provenance,
}

/// Memo of correlator values keyed by genus and sorted insertion multiset.
/// Reads take `&self`; writes need `&mut self`, so sharing across threads
/// behind a lock gives the single-writer discipline for free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrelatorTable {
    entries: BTreeMap<(u32, Vec<usize>), Entry>,
}

impl CorrelatorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, genus: u32, key: &[usize]) -> Option<&Entry> {
        let mut k = key.to_vec();
        k.sort_unstable();
        self.entries.get(&(genus, k))
    }

    pub fn insert(&mut self, genus: u32, key: &[usize], value: Rational, provenance: Provenance) {
        let mut k = key.to_vec();
        k.sort_unstable();
        self.entries.insert((genus, k), Entry { value, provenance });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, Vec<usize>), &Entry)> {
        self.entries.iter()
    }
}

/// Frobenius algebra with a distinguished basis; degrees are complex degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    pub labels: Vec<String>,
    pub degrees: Vec<Rational>,
    pub c_hat: Rational,
    pub eta: RatMatrix,
    pub eta_inv: RatMatrix,
    c3: Vec<Rational>,
    prod: Vec<Vec<Rational>>,
    pub unit: usize,
}

impl FrobeniusAlgebra {
    /// `c3(i,j,k)` must be symmetric.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<Rational>,
        c_hat: Rational,
        eta: RatMatrix,
        c3: impl Fn(usize, usize, usize) -> Rational,
        unit: usize,
    ) -> Result<FrobeniusAlgebra> {
        let n = labels.len();
        let eta_inv = eta.inverse().ok_or_else(|| QsingError::Internal("pairing is degenerate".into()))?;
        let mut flat = vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let v = c3(i, j, k);
                    for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                        flat[(a * n + b) * n + c] = v.clone();
                    }
                }
            }
        }
        let mut alg = FrobeniusAlgebra { labels, degrees, c_hat, eta, eta_inv, c3: flat, prod: vec![], unit };
        let mut prod = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                prod.push(
                    (0..n)
                        .map(|nu| (0..n).fold(Rational::zero(), |acc, mu| acc + alg.c3(i, j, mu) * &alg.eta_inv.data[mu][nu]))
                        .collect(),
                );
            }
        }
        alg.prod = prod;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn c3(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.c3[(i * n + j) * n + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        &self.prod[i * self.dim() + j]
    }

    pub fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let c = &a[i] * &b[j];
                for (o, p) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !p.is_zero() {
                        *o += &c * p;
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, a: &[Rational], k: u32) -> Vec<Rational> {
        (0..k).fold(self.basis_vector(self.unit), |acc, _| self.product(&acc, a))
    }

    pub fn pairing(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let n = self.dim();
        let mut s = Rational::zero();
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                s += &a[i] * &b[j] * &self.eta.data[i][j];
            }
        }
        s
    }

    pub fn c3_vec(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
        self.pairing(&self.product(a, b), c)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let l = self.product(self.basis_product(i, j), &self.basis_vector(k));
                    let r = self.product(&self.basis_vector(i), self.basis_product(j, k));
                    l == r
                })
            })
        })
    }

    pub fn unit_acts_trivially(&self) -> bool {
        (0..self.dim()).all(|i| self.basis_product(self.unit, i) == self.basis_vector(i).as_slice())
    }

    /// Re-express on the basis b_i = Σ_j v[i][j] e_j.
    pub fn change_basis(&self, v: &[Vec<Rational>], labels: Vec<String>, degrees: Vec<Rational>) -> Result<FrobeniusAlgebra> {
        let n = self.dim();
        if v.len() != n || RatMatrix::from_rows(v.to_vec()).inverse().is_none() {
            return Err(QsingError::DimensionMismatch { image: RatMatrix::from_rows(v.to_vec()).rank(), target: n });
        }
        let unit_vec = self.basis_vector(self.unit);
        let unit = v
            .iter()
            .position(|x| x == &unit_vec)
            .ok_or_else(|| QsingError::Internal("new basis does not contain the unit".into()))?;
        let mut eta = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                eta.data[i][j] = self.pairing(&v[i], &v[j]);
            }
        }
        FrobeniusAlgebra::new(labels, degrees, self.c_hat.clone(), eta, |i, j, k| self.c3_vec(&v[i], &v[j], &v[k]), unit)
    }
}

/// A Frobenius algebra whose basis elements are monomials in primitive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPresentation {
    pub alg: FrobeniusAlgebra,
    pub exps: Vec<Vec<u32>>,
    /// Basis index of each generator, when the generator itself is a basis element.
    pub gens: Vec<Option<usize>>,
}

impl MonomialPresentation {
    /// Checks that every basis monomial is exactly the product of a generator
    /// and another basis monomial, wherever the generator divides it.
    pub fn new(alg: FrobeniusAlgebra, exps: Vec<Vec<u32>>) -> Result<MonomialPresentation> {
        let ngens = exps.first().map_or(0, |e| e.len());
        let gens: Vec<Option<usize>> = (0..ngens)
            .map(|g| exps.iter().position(|e| e.iter().enumerate().all(|(k, &x)| x == u32::from(k == g))))
            .collect();
        let p = MonomialPresentation { alg, exps, gens };
        if p.exps[p.alg.unit].iter().any(|&x| x != 0) {
            return Err(QsingError::Internal("unit is not the empty monomial".into()));
        }
        for i in 0..p.alg.dim() {
            for (g, phi) in p.factorizations(i) {
                if p.alg.basis_product(g, phi) != p.alg.basis_vector(i).as_slice() {
                    return Err(QsingError::Internal(format!("{} is not {}*{}", p.alg.labels[i], p.alg.labels[g], p.alg.labels[phi])));
                }
            }
        }
        Ok(p)
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.exps[i].iter().sum()
    }

    pub fn is_primitive(&self, i: usize) -> bool {
        self.weight(i) == 1
    }

    /// All (ε, φ) basis pairs with ε a generator and e_i = ε⋆φ, φ not the unit.
    pub fn factorizations(&self, i: usize) -> Vec<(usize, usize)> {
        if self.weight(i) < 2 {
            return vec![];
        }
        let mut out = Vec::new();
        for (g, gi) in self.gens.iter().enumerate() {
            let Some(gi) = *gi else { continue };
            if self.exps[i][g] == 0 {
                continue;
            }
            let mut e = self.exps[i].clone();
            e[g] -= 1;
            if let Some(phi) = self.exps.iter().position(|x| x == &e) {
                out.push((gi, phi));
            }
        }
        out
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.exps.iter().position(|x| x == e)
    }
}

/// Truncated potential in coordinates t_i dual to a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialSeries {
    pub order: usize,
    pub poly: Poly,
    pub labels: Vec<String>,
    pub degrees: Vec<Rational>,
}

impl PotentialSeries {
    pub fn part(&self, k: u32) -> Poly {
        Poly::from_terms(
            self.poly.nvars(),
            self.poly.terms().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Coefficient of Π t_i over a multiset of basis indices.
    pub fn coefficient(&self, key: &[usize]) -> Rational {
        let mut e = vec![0u32; self.labels.len()];
        for &i in key {
            e[i] += 1;
        }
        self.poly.coeff(&Monomial(e))
    }

    /// The correlator behind a coefficient: coefficient × Π multiplicity!.
    pub fn correlator(&self, key: &[usize]) -> Rational {
        let mut e = vec![0u32; self.labels.len()];
        for &i in key {
            e[i] += 1;
        }
        let sym = e.iter().fold(Rational::one(), |acc, &m| acc * factorial(m));
        self.poly.coeff(&Monomial(e)) * sym
    }

    pub fn render(&self, k: u32) -> String {
        self.part(k).render(&self.labels)
    }
}

pub fn factorial(m: u32) -> Rational {
    (1..=m as i64).fold(Rational::one(), |acc, x| acc * rint(x))
}
