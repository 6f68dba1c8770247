//! The Milnor ring C[x]/Jac(W) with its residue pairing.

use exactalg::{groebner_basis, normal_form, rint, standard_monomials};
use exactalg::{Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, Zero};

use crate::error::{QsingError, Result};
use crate::singular::QSingularity;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorRing {
    pub nvars: usize,
    pub w: Poly,
    pub q: Vec<Rational>,
    pub c_hat: Rational,
    pub gb: Vec<Poly>,
    /// Ordered by weighted degree, then grevlex.
    pub basis: Vec<Monomial>,
    pub mu: usize,
    pub hessian_nf: Poly,
    pub socle: usize,
    std: Vec<Monomial>,
    // rows: std coordinates -> basis coordinates
    to_basis: RatMatrix,
    hess_socle: Rational,
}

impl MilnorRing {
    /// `q` are the weights of the variables of `w` (which may be restricted, or have no variables at all).
    pub fn new(w: &Poly, q: &[Rational]) -> Result<MilnorRing> {
        let nv = w.nvars();
        assert_eq!(q.len(), nv);
        let c_hat = q.iter().fold(Rational::zero(), |acc, x| acc + Rational::one() - x * rint(2));
        if nv == 0 {
            return Ok(MilnorRing {
                nvars: 0,
                w: w.clone(),
                q: vec![],
                c_hat,
                gb: vec![],
                basis: vec![Monomial(vec![])],
                mu: 1,
                hessian_nf: Poly::one(0),
                socle: 0,
                std: vec![Monomial(vec![])],
                to_basis: RatMatrix::identity(1),
                hess_socle: Rational::one(),
            });
        }
        let jac: Vec<Poly> = (0..nv).map(|i| w.derivative(i)).collect();
        let gb = groebner_basis(&jac);
        let std = standard_monomials(&gb, nv).ok_or(QsingError::NonIsolatedSingularity)?;
        if std.is_empty() {
            return Err(QsingError::NotSingular);
        }
        let mu = std.len();
        let coords_std = |f: &Poly| -> Vec<Rational> {
            let r = normal_form(f, &gb);
            std.iter().map(|m| r.coeff(m)).collect()
        };

        // Candidate monomials of weighted degree ≤ ĉ; within one degree prefer
        // larger exponents in earlier variables.
        let mut cands = Vec::new();
        enumerate_monomials(nv, q, &c_hat, &mut vec![0; nv], 0, &mut cands);
        cands.sort_by(|a: &Monomial, b: &Monomial| {
            a.weighted_degree(q).cmp(&b.weighted_degree(q)).then_with(|| b.0.cmp(&a.0))
        });
        let mut chosen: Vec<Monomial> = Vec::new();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for m in cands {
            if chosen.len() == mu {
                break;
            }
            let v = coords_std(&Poly::term(m.clone(), Rational::one()));
            let mut trial = rows.clone();
            trial.push(v.clone());
            if RatMatrix::from_rows(trial).rank() == rows.len() + 1 {
                rows.push(v);
                chosen.push(m);
            }
        }
        if chosen.len() != mu {
            return Err(QsingError::Internal(format!("found {} basis monomials, expected {mu}", chosen.len())));
        }
        let mut order: Vec<usize> = (0..mu).collect();
        order.sort_by(|&i, &j| chosen[i].weighted_degree(q).cmp(&chosen[j].weighted_degree(q)).then(chosen[i].cmp(&chosen[j])));
        let basis: Vec<Monomial> = order.iter().map(|&i| chosen[i].clone()).collect();
        let m = RatMatrix::from_rows(order.iter().map(|&i| rows[i].clone()).collect());
        let to_basis = m.inverse().ok_or_else(|| QsingError::Internal("basis change not invertible".into()))?;

        let top: Vec<usize> = (0..mu).filter(|&i| basis[i].weighted_degree(q) == c_hat).collect();
        if top.len() != 1 {
            return Err(QsingError::Internal(format!("{} basis monomials of top degree", top.len())));
        }
        let socle = top[0];

        let hess: Vec<Vec<Poly>> = (0..nv).map(|i| (0..nv).map(|j| w.derivative(i).derivative(j)).collect()).collect();
        let hessian_nf = normal_form(&exactalg::poly::det(&hess, nv), &gb);
        let mut ring = MilnorRing {
            nvars: nv,
            w: w.clone(),
            q: q.to_vec(),
            c_hat,
            gb,
            basis,
            mu,
            hessian_nf: hessian_nf.clone(),
            socle,
            std,
            to_basis,
            hess_socle: Rational::zero(),
        };
        let hc = ring.coords(&hessian_nf);
        if hc.iter().enumerate().any(|(i, c)| i != socle && !c.is_zero()) || hc[socle].is_zero() {
            return Err(QsingError::Internal("Hessian is not a multiple of the socle".into()));
        }
        ring.hess_socle = hc[socle].clone();
        Ok(ring)
    }

    pub fn from_singularity(s: &QSingularity) -> Result<MilnorRing> {
        MilnorRing::new(&s.w, &s.q)
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        if self.nvars == 0 {
            return f.clone();
        }
        normal_form(f, &self.gb)
    }

    /// Coordinates of f in `basis`.
    pub fn coords(&self, f: &Poly) -> Vec<Rational> {
        let r = self.normal_form(f);
        let v: Vec<Rational> = self.std.iter().map(|m| r.coeff(m)).collect();
        (0..self.mu)
            .map(|j| (0..self.mu).fold(Rational::zero(), |acc, i| acc + &v[i] * &self.to_basis.data[i][j]))
            .collect()
    }

    pub fn monomial(&self, i: usize) -> Poly {
        Poly::term(self.basis[i].clone(), Rational::one())
    }

    pub fn from_coords(&self, c: &[Rational]) -> Poly {
        Poly::from_terms(self.nvars, self.basis.iter().cloned().zip(c.iter().cloned()))
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    pub fn degree(&self, i: usize) -> Rational {
        self.basis[i].weighted_degree(&self.q)
    }

    pub fn residue(&self, f: &Poly) -> Rational {
        let c = self.coords(f);
        rint(self.mu as i64) * &c[self.socle] / &self.hess_socle
    }

    pub fn residue_pairing(&self, f: &Poly, g: &Poly) -> Rational {
        self.residue(&(f * g))
    }

    pub fn gram(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.mu, self.mu);
        for i in 0..self.mu {
            for j in 0..self.mu {
                m.data[i][j] = self.residue(&(&self.monomial(i) * &self.monomial(j)));
            }
        }
        m
    }
}

pub fn hessian_class(r: &MilnorRing) -> Poly {
    r.hessian_nf.clone()
}

fn enumerate_monomials(nv: usize, q: &[Rational], bound: &Rational, e: &mut Vec<u32>, i: usize, out: &mut Vec<Monomial>) {
    if i == nv {
        out.push(Monomial(e.clone()));
        return;
    }
    let mut k = 0u32;
    loop {
        e[i] = k;
        let deg = Monomial(e.clone()).weighted_degree(q);
        if &deg > bound {
            break;
        }
        enumerate_monomials(nv, q, bound, e, i + 1, out);
        k += 1;
    }
    e[i] = 0;
}
