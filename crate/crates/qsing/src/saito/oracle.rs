//! Brute-force B-model data: deform W along flat coordinates, take global
//! residues through the Bezoutian, and read off η, C₃ and C₄ = ∂C₃/∂s at 0.
//! Shares nothing with the closed forms except the flat-coordinate series.

use std::collections::BTreeMap;

use exactalg::{groebner_basis, normal_form, rint, standard_monomials};
use exactalg::{Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, ToPrimitive, Zero};

use super::flat::{exact_order, flat_coordinates};
use super::Family;
use crate::error::{QsingError, Result};

/// f ↦ Res[f dx / (∂₁W ⋯ ∂_N W)] for a polynomial W with isolated critical
/// locus, summed over all critical points.
pub struct ResidueFunctional {
    nvars: usize,
    gb: Vec<Poly>,
    std: Vec<Monomial>,
    /// Res(std_m) for each standard monomial.
    values: Vec<Rational>,
}

impl ResidueFunctional {
    pub fn new(w: &Poly) -> Result<ResidueFunctional> {
        let n = w.nvars();
        let jac: Vec<Poly> = (0..n).map(|i| w.derivative(i)).collect();
        let gb = groebner_basis(&jac);
        let std = standard_monomials(&gb, n).ok_or(QsingError::NonIsolatedSingularity)?;
        let mu = std.len();

        // Bezoutian Δ_ij = (f_i(y₁..y_{j−1}, x_j, ..) − f_i(y₁..y_j, x_{j+1}, ..)) / (x_j − y_j)
        // in 2N variables, x first.
        let mut mat = vec![vec![Poly::zero(2 * n); n]; n];
        for (i, f) in jac.iter().enumerate() {
            for (j, cell) in mat[i].iter_mut().enumerate() {
                for (m, c) in f.terms() {
                    let mj = m.0[j];
                    for t in 0..mj {
                        let mut e = vec![0u32; 2 * n];
                        for k in 0..n {
                            match k.cmp(&j) {
                                std::cmp::Ordering::Less => e[n + k] = m.0[k],
                                std::cmp::Ordering::Greater => e[k] = m.0[k],
                                std::cmp::Ordering::Equal => {
                                    e[k] = t;
                                    e[n + k] = mj - 1 - t;
                                }
                            }
                        }
                        cell.add_term(Monomial(e), c.clone());
                    }
                }
            }
        }
        let bez = exactalg::poly::det(&mat, 2 * n);
        let xs: Vec<usize> = (0..n).collect();
        let ys: Vec<usize> = (n..2 * n).collect();
        let mut both: Vec<Poly> = gb.iter().map(|g| g.embed(2 * n, &xs)).collect();
        both.extend(gb.iter().map(|g| g.embed(2 * n, &ys)));
        let r = normal_form(&bez, &both);
        let idx = |m: &[u32]| std.iter().position(|s| s.0 == m);
        let mut c = RatMatrix::zeros(mu, mu);
        for (m, v) in r.terms() {
            let (a, b) = (idx(&m.0[..n]), idx(&m.0[n..]));
            match (a, b) {
                (Some(a), Some(b)) => c.data[a][b] += v,
                _ => return Err(QsingError::Internal("Bezoutian did not reduce to standard monomials".into())),
            }
        }
        let g = c.inverse().ok_or_else(|| QsingError::Internal("Bezoutian matrix is singular".into()))?;
        let one = idx(&vec![0; n]).ok_or(QsingError::NotSingular)?;
        let values = (0..mu).map(|m| g.data[one][m].clone()).collect();
        Ok(ResidueFunctional { nvars: n, gb, std, values })
    }

    pub fn mu(&self) -> usize {
        self.std.len()
    }

    pub fn residue(&self, f: &Poly) -> Rational {
        debug_assert_eq!(f.nvars(), self.nvars);
        let r = normal_form(f, &self.gb);
        self.std.iter().zip(&self.values).fold(Rational::zero(), |acc, (m, v)| acc + r.coeff(m) * v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleData {
    pub eta: RatMatrix,
    /// C_ijk at s = 0 on sorted keys (zeros omitted).
    pub c3: BTreeMap<Vec<usize>, Rational>,
    /// ∂C_ijk/∂s_l at s = 0 on sorted keys (zeros omitted).
    pub c4: BTreeMap<Vec<usize>, Rational>,
    /// η(s) is constant along every coordinate line tested.
    pub flat: bool,
    /// Every C_ijk(s_l) was a monomial in s_l of the weight-predicted degree,
    /// and each C₄ key got the same value from every line it was reached from.
    pub consistent: bool,
}

struct Point {
    res: ResidueFunctional,
    phi: Vec<Poly>,
}

fn point(w: &Poly, basis: &[Monomial], inverse: &[Poly], s: &[Rational]) -> Result<Point> {
    let n = w.nvars();
    let mu = basis.len();
    let mut ws = w.clone();
    for (b, m) in basis.iter().enumerate() {
        ws = &ws + &Poly::term(m.clone(), inverse[b].eval(s));
    }
    let phi = (0..mu)
        .map(|a| {
            let mut p = Poly::zero(n);
            for (b, m) in basis.iter().enumerate() {
                p = &p + &Poly::term(m.clone(), inverse[b].derivative(a).eval(s));
            }
            p
        })
        .collect();
    Ok(Point { res: ResidueFunctional::new(&ws)?, phi })
}

/// Recompute the B-model data of `family` at primitive form scale·dx.
pub fn residue_oracle(family: &Family, scale: &Rational) -> Result<OracleData> {
    let w = family.polynomial();
    let fm = flat_coordinates(family, exact_order(family)?)?;
    let mu = fm.basis.len();
    let c_hat = family.milnor()?.c_hat;
    let zero = vec![Rational::zero(); mu];
    let p0 = point(&w, &fm.basis, &fm.inverse, &zero)?;
    let pair = |p: &Point, a: usize, b: usize| scale * p.res.residue(&(&p.phi[a] * &p.phi[b]));
    let triple = |p: &Point, a: usize, b: usize, c: usize| scale * p.res.residue(&(&(&p.phi[a] * &p.phi[b]) * &p.phi[c]));

    let mut eta = RatMatrix::zeros(mu, mu);
    for a in 0..mu {
        for b in 0..mu {
            eta.data[a][b] = pair(&p0, a, b);
        }
    }
    let mut c3 = BTreeMap::new();
    for i in 0..mu {
        for j in i..mu {
            for k in j..mu {
                let v = triple(&p0, i, j, k);
                if !v.is_zero() {
                    c3.insert(vec![i, j, k], v);
                }
            }
        }
    }

    let mut flat = true;
    let mut consistent = true;
    let mut c4: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let three = rint(3);
    for l in 0..mu {
        let pts: Vec<Point> = [1, 2]
            .iter()
            .map(|&e| {
                let mut s = zero.clone();
                s[l] = rint(e);
                point(&w, &fm.basis, &fm.inverse, &s)
            })
            .collect::<Result<_>>()?;
        for a in 0..mu {
            for b in a..mu {
                if pair(&pts[0], a, b) != eta.data[a][b] {
                    flat = false;
                }
            }
        }
        for i in 0..mu {
            for j in i..mu {
                for k in j..mu {
                    // C_ijk(e) = c·e^p with p σ_l = 3 − ĉ − σ_i − σ_j − σ_k
                    let weight = &three - &c_hat - &fm.sigma[i] - &fm.sigma[j] - &fm.sigma[k];
                    let p = &weight / &fm.sigma[l];
                    let (v1, v2) = (triple(&pts[0], i, j, k), triple(&pts[1], i, j, k));
                    let expected2 = (p.is_integer() && p >= Rational::zero())
                        .then(|| &v1 * num_traits::pow(rint(2), p.to_integer().to_usize().unwrap()));
                    match expected2 {
                        Some(f) if f == v2 => {}
                        None if v1.is_zero() && v2.is_zero() => {}
                        _ => consistent = false,
                    }
                    if p.is_one() {
                        let mut key = vec![i, j, k, l];
                        key.sort_unstable();
                        match c4.get(&key) {
                            Some(old) if old != &v1 => consistent = false,
                            Some(_) => {}
                            None => {
                                c4.insert(key, v1);
                            }
                        }
                    }
                }
            }
        }
    }
    c4.retain(|_, v| !v.is_zero());
    Ok(OracleData { eta, c3, c4, flat, consistent })
}
