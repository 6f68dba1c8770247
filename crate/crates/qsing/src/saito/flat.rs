//! Noumi–Yamada flat coordinates on the miniversal deformation.

use exactalg::rational::pochhammer;
use exactalg::{rint, Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, ToPrimitive, Zero};

use super::Family;
use crate::correlator::factorial;
use crate::error::{QsingError, Result};

/// Deformation parameters t_ν (coefficients of x^ν in W + Σ t_ν x^ν) against
/// flat coordinates s_ν, both as series truncated at total order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCoordMap {
    pub family: Family,
    pub basis: Vec<Monomial>,
    /// σ_ν = 1 − deg x^ν.
    pub sigma: Vec<Rational>,
    pub order: u32,
    /// s_ν(t).
    pub forward: Vec<Poly>,
    /// t_ν(s).
    pub inverse: Vec<Poly>,
}

/// c_ν(m) = Π_j (−1)^{k_j} (z_j; k_j) with Bᵀz = ν+1 and Bᵀk = m−ν; zero
/// unless k is integral.
pub fn ny_coefficient(rows: &[Vec<u32>], nu: &Monomial, m: &Monomial) -> Rational {
    let n = nu.0.len();
    let bt = RatMatrix::from_rows((0..n).map(|c| rows.iter().map(|r| rint(r[c] as i64)).collect()).collect());
    let z = bt.solve(&nu.0.iter().map(|&e| rint(e as i64 + 1)).collect::<Vec<_>>()).expect("exponent matrix is invertible");
    let k = bt
        .solve(&(0..n).map(|i| rint(m.0[i] as i64 - nu.0[i] as i64)).collect::<Vec<_>>())
        .expect("exponent matrix is invertible");
    let mut c = Rational::one();
    for (zj, kj) in z.iter().zip(&k) {
        if !kj.is_integer() {
            return Rational::zero();
        }
        let kj = kj.to_integer().to_i64().unwrap();
        let Some(p) = pochhammer(zj, kj) else { return Rational::zero() };
        c *= p;
        if kj.abs() % 2 == 1 {
            c = -c;
        }
    }
    c
}

fn alphas(sigma: &[Rational], target: &Rational, order: u32) -> Vec<Vec<u32>> {
    fn rec(sigma: &[Rational], target: &Rational, order: u32, cur: &mut Vec<u32>, w: Rational, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == sigma.len() {
            if &w == target {
                out.push(cur.clone());
            }
            return;
        }
        let used: u32 = cur.iter().sum();
        let mut a = 0u32;
        let mut wa = w.clone();
        while &wa <= target && used + a <= order {
            cur.push(a);
            rec(sigma, target, order, cur, wa.clone(), out);
            cur.pop();
            a += 1;
            wa += &sigma[i];
        }
    }
    let mut out = Vec::new();
    rec(sigma, target, order, &mut Vec::new(), Rational::zero(), &mut out);
    out
}

/// Substitute `args[i]` for variable i, dropping terms of total degree above `order`.
pub fn compose(p: &Poly, args: &[Poly], order: u32) -> Poly {
    let n = args.first().map_or(0, |a| a.nvars());
    let mut powers: Vec<Vec<Poly>> = args.iter().map(|a| vec![Poly::one(n), a.clone()]).collect();
    let mut out = Poly::zero(n);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(n, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = (&powers[i][powers[i].len() - 1] * &args[i]).truncate(order);
                powers[i].push(next);
            }
            t = (&t * &powers[i][e as usize]).truncate(order);
            if t.is_zero() {
                break;
            }
        }
        out = &out + &t;
    }
    out
}

/// The order at which the series terminate: every term of s_ν has |α| ≤ σ_ν / min σ.
pub fn exact_order(family: &Family) -> Result<u32> {
    let ring = family.milnor()?;
    let sigma: Vec<Rational> = (0..ring.mu).map(|i| Rational::one() - ring.degree(i)).collect();
    let min = sigma.iter().min().unwrap().clone();
    Ok((Rational::one() / min).floor().to_integer().to_u32().unwrap())
}

pub fn flat_coordinates(family: &Family, order: u32) -> Result<FlatCoordMap> {
    if order == 0 {
        return Err(QsingError::InvalidArgument("truncation order must be positive".into()));
    }
    let ring = family.milnor()?;
    let rows = family.exponent_rows();
    let mu = ring.mu;
    let basis = ring.basis.clone();
    let sigma: Vec<Rational> = (0..mu).map(|i| Rational::one() - ring.degree(i)).collect();
    let mut forward = Vec::with_capacity(mu);
    for (v, nu) in basis.iter().enumerate() {
        let mut s = Poly::zero(mu);
        for a in alphas(&sigma, &sigma[v], order) {
            let mut m = vec![0u32; nu.0.len()];
            for (b, &ab) in basis.iter().zip(&a) {
                for (mi, bi) in m.iter_mut().zip(&b.0) {
                    *mi += ab * bi;
                }
            }
            let c = ny_coefficient(&rows, nu, &Monomial(m));
            if c.is_zero() {
                continue;
            }
            let sym = a.iter().fold(Rational::one(), |acc, &x| acc * factorial(x));
            s.add_term(Monomial(a), c / sym);
        }
        forward.push(s);
    }
    // t = s − (s(t) − t), iterated: each pass fixes one more order.
    let ident: Vec<Poly> = (0..mu).map(|i| Poly::var(mu, i)).collect();
    let higher: Vec<Poly> = forward.iter().zip(&ident).map(|(f, t)| f - t).collect();
    let mut inverse = ident.clone();
    for _ in 0..order {
        inverse = (0..mu).map(|v| &ident[v] - &compose(&higher[v], &inverse, order)).collect();
    }
    Ok(FlatCoordMap { family: *family, basis, sigma, order, forward, inverse })
}

impl FlatCoordMap {
    /// s(t(s)) − s through the truncation order; zero when the inversion is exact.
    pub fn inversion_defect(&self) -> Vec<Poly> {
        let mu = self.basis.len();
        (0..mu)
            .map(|v| &compose(&self.forward[v], &self.inverse, self.order) - &Poly::var(mu, v))
            .collect()
    }

    /// Every term of s_ν and t_ν has σ-weight σ_ν.
    pub fn is_weight_homogeneous(&self) -> bool {
        let ok = |p: &Poly, w: &Rational| p.terms().all(|(m, _)| &m.weighted_degree(&self.sigma) == w);
        (0..self.basis.len()).all(|v| ok(&self.forward[v], &self.sigma[v]) && ok(&self.inverse[v], &self.sigma[v]))
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }
}
