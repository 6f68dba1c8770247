//! The ADE B-model: flat coordinates, closed-form two/three/four-point data
//! and the primary potential F₃ + F₄ under a chosen primitive form.

mod flat;
mod oracle;
mod tables;

use std::collections::BTreeMap;
use std::fmt;

use exactalg::{fmt_rat, rint, Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, Zero};

use crate::correlator::{factorial, FrobeniusAlgebra, PotentialSeries};
use crate::error::{QsingError, Result};
use crate::milnor::MilnorRing;
use crate::singular::{check_nondegenerate, QSingularity};

pub use flat::{compose, exact_order, flat_coordinates, ny_coefficient, FlatCoordMap};
pub use oracle::{residue_oracle, OracleData, ResidueFunctional};

/// Simple singularities in their standard invertible forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// x^{n+1}
    A(u32),
    /// x^n + x y², i.e. D_{n+1}
    D(u32),
    E6,
    E7,
    E8,
}

impl Family {
    /// Accepts `A:n`, `D:n`, `E6`, `E7`, `E8`.
    pub fn parse(tag: &str) -> Result<Family> {
        let bad = || QsingError::UnknownFamily(tag.to_string());
        let (head, arg) = match tag.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<u32>().map_err(|_| bad())?)),
            None => (tag, None),
        };
        let f = match (head, arg) {
            ("A", Some(n)) if n >= 1 => Family::A(n),
            ("D", Some(n)) if n >= 3 => Family::D(n),
            ("E6", None) => Family::E6,
            ("E7", None) => Family::E7,
            ("E8", None) => Family::E8,
            _ => return Err(bad()),
        };
        Ok(f)
    }

    pub fn tag(&self) -> String {
        match self {
            Family::A(n) => format!("A:{n}"),
            Family::D(n) => format!("D:{n}"),
            Family::E6 => "E6".into(),
            Family::E7 => "E7".into(),
            Family::E8 => "E8".into(),
        }
    }

    pub fn exponent_rows(&self) -> Vec<Vec<u32>> {
        match *self {
            Family::A(n) => vec![vec![n + 1]],
            Family::D(n) => vec![vec![n, 0], vec![1, 2]],
            Family::E6 => vec![vec![3, 0], vec![0, 4]],
            Family::E7 => vec![vec![3, 0], vec![1, 3]],
            Family::E8 => vec![vec![3, 0], vec![0, 5]],
        }
    }

    pub fn vars(&self) -> Vec<String> {
        match self {
            Family::A(_) => vec!["x".into()],
            _ => vec!["x".into(), "y".into()],
        }
    }

    pub fn polynomial(&self) -> Poly {
        let rows = self.exponent_rows();
        let n = rows[0].len();
        Poly::from_terms(n, rows.into_iter().map(|r| (Monomial(r), Rational::one())))
    }

    pub fn singularity(&self) -> Result<QSingularity> {
        check_nondegenerate(&self.polynomial(), self.vars())
    }

    pub fn milnor(&self) -> Result<MilnorRing> {
        MilnorRing::from_singularity(&self.singularity()?)
    }

    /// Multiple of dx at which the closed forms and tables are stated.
    pub fn natural_base(&self) -> Rational {
        match *self {
            Family::A(n) => rint(n as i64 + 1),
            Family::D(n) => rint(2 * n as i64),
            Family::E6 => rint(12),
            Family::E7 => rint(9),
            Family::E8 => rint(15),
        }
    }

    /// Coordinate suffix of the basis monomial x^ν: the exponent of x for A and
    /// D (with `01` for y), and d·σ_ν for the E series.
    pub fn suffix(&self, ring: &MilnorRing, i: usize) -> String {
        let m = &ring.basis[i].0;
        match self {
            Family::A(_) => m[0].to_string(),
            Family::D(_) => {
                if m[1] == 1 {
                    "01".into()
                } else {
                    m[0].to_string()
                }
            }
            _ => {
                let d = match self {
                    Family::E6 => 12,
                    Family::E7 => 9,
                    _ => 15,
                };
                (rint(d) * (Rational::one() - ring.degree(i))).to_string()
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(n) => write!(f, "A_{n}"),
            Family::D(n) => write!(f, "D_{}", n + 1),
            Family::E6 => write!(f, "E_6"),
            Family::E7 => write!(f, "E_7"),
            Family::E8 => write!(f, "E_8"),
        }
    }
}

/// A primitive form c·dx, with c = rational · Π base^exponent. The radical
/// factors are only ever carried symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveScale {
    pub rational: Rational,
    pub radicals: Vec<(Rational, Rational)>,
}

impl PrimitiveScale {
    pub fn rational(r: Rational) -> Self {
        PrimitiveScale { rational: r, radicals: vec![] }
    }
}

impl fmt::Display for PrimitiveScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, e) in &self.radicals {
            write!(f, "({})^({})*", fmt_rat(b), fmt_rat(e))?;
        }
        write!(f, "{}", fmt_rat(&self.rational))
    }
}

/// η, C₃ and C₄ of the B-model at a rational primitive form scale·dx, on the
/// Milnor basis of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BCorrelators {
    pub family: Family,
    pub scale: Rational,
    pub ring: MilnorRing,
    pub labels: Vec<String>,
    pub alg: FrobeniusAlgebra,
    /// Nonzero four-point values on sorted index keys.
    pub c4: BTreeMap<Vec<usize>, Rational>,
}

impl BCorrelators {
    pub fn c4(&self, key: &[usize]) -> Rational {
        let mut k = key.to_vec();
        k.sort_unstable();
        self.c4.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn index_by_suffix(&self, suffix: &str) -> Option<usize> {
        (0..self.ring.mu).find(|&i| self.family.suffix(&self.ring, i) == suffix)
    }
}

pub fn bmodel_correlators(family: &Family, scale: &Rational) -> Result<BCorrelators> {
    if scale.is_zero() {
        return Err(QsingError::InvalidArgument("primitive form scale must be nonzero".into()));
    }
    let ring = family.milnor()?;
    let mu = ring.mu;
    let f = scale / family.natural_base();
    let c3_base = tables::three_point(family, &ring);
    let c4_base = tables::four_point(family, &ring)?;
    let c3 = |i: usize, j: usize, k: usize| &c3_base[(i * mu + j) * mu + k] * &f;
    let mut eta = RatMatrix::zeros(mu, mu);
    let unit = ring.index_of(&Monomial(vec![0; ring.nvars])).expect("1 is a basis monomial");
    for i in 0..mu {
        for j in 0..mu {
            eta.data[i][j] = c3(unit, i, j);
        }
    }
    let labels: Vec<String> = (0..mu).map(|i| format!("s{}", family.suffix(&ring, i))).collect();
    let degrees = (0..mu).map(|i| ring.degree(i)).collect();
    let alg = FrobeniusAlgebra::new(labels.clone(), degrees, ring.c_hat.clone(), eta, c3, unit)?;
    let c4 = c4_base.into_iter().map(|(k, v)| (k, v * &f)).collect();
    Ok(BCorrelators { family: *family, scale: scale.clone(), ring, labels, alg, c4 })
}

/// F₃ + F₄ in flat coordinates s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPotential {
    pub family: Family,
    pub scale: PrimitiveScale,
    pub data: BCorrelators,
    pub f3: PotentialSeries,
    pub f4: PotentialSeries,
}

impl BPotential {
    pub fn eta(&self) -> &RatMatrix {
        &self.data.alg.eta
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }
}

fn series(data: &BCorrelators, k: usize, value: impl Fn(&[usize]) -> Rational) -> PotentialSeries {
    let n = data.ring.mu;
    let mut poly = Poly::zero(n);
    let mut key = vec![0usize; k];
    loop {
        let v = value(&key);
        if !v.is_zero() {
            let mut e = vec![0u32; n];
            for &i in &key {
                e[i] += 1;
            }
            let sym = e.iter().fold(Rational::one(), |acc, &m| acc * factorial(m));
            poly.add_term(Monomial(e), v / sym);
        }
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
    PotentialSeries { order: k, poly, labels: data.labels.clone(), degrees: data.alg.degrees.clone() }
}

pub fn bmodel_potential(family: &Family, scale: &Rational) -> Result<BPotential> {
    let data = bmodel_correlators(family, scale)?;
    let f3 = series(&data, 3, |k| data.alg.c3(k[0], k[1], k[2]).clone());
    let f4 = series(&data, 4, |k| data.c4(k));
    Ok(BPotential { family: *family, scale: PrimitiveScale::rational(scale.clone()), data, f3, f4 })
}

/// F₃ fixed and F₄ ↦ λF₄, which is what the primitive form c·ω with c = λ^{−ĉ}
/// does after the compensating rescaling of the flat coordinates.
pub fn rescale_potential(p: &BPotential, lambda: &Rational) -> Result<BPotential> {
    if lambda.is_zero() {
        return Err(QsingError::ZeroLambda);
    }
    let mut out = p.clone();
    if lambda.is_one() {
        return Ok(out);
    }
    out.f4.poly = p.f4.poly.scale(lambda);
    for v in out.data.c4.values_mut() {
        *v *= lambda;
    }
    out.scale.radicals.push((lambda.clone(), -p.data.ring.c_hat.clone()));
    Ok(out)
}
