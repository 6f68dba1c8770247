//! Weights, nondegeneracy, the maximal diagonal symmetry group and J.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use exactalg::rational::frac;
use exactalg::{fmt_rat, groebner_basis, parse_polynomial, rint, smith_normal_form, standard_monomials};
use exactalg::{IntMatrix, Poly, RatMatrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QsingError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSingularity {
    pub w: Poly,
    pub vars: Vec<String>,
    /// One row per distinct monomial of W.
    pub b: IntMatrix,
    pub q: Vec<Rational>,
    pub d: u64,
    pub n: Vec<u64>,
    pub c_hat: Rational,
    pub mu: usize,
}

impl QSingularity {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Parse and analyze in one step.
    pub fn parse(text: &str, vars: Option<&[String]>) -> Result<QSingularity> {
        let (w, names) = parse_polynomial(text, vars)?;
        check_nondegenerate(&w, names)
    }

    pub fn exponent_rows(&self) -> Vec<Vec<u32>> {
        self.w.terms().map(|(m, _)| m.0.clone()).collect()
    }
}

/// A diagonal symmetry stored as phases Θ in [0,1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub theta: Vec<Rational>,
}

impl GroupElement {
    pub fn new(theta: Vec<Rational>) -> Self {
        GroupElement { theta: theta.iter().map(frac).collect() }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { theta: vec![Rational::zero(); n] }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement::new(self.theta.iter().zip(&o.theta).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(self.theta.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        GroupElement::new(self.theta.iter().map(|a| a * rint(k)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.theta.iter().all(|t| t.is_zero())
    }

    pub fn order(&self) -> u64 {
        self.theta.iter().fold(1u64, |acc, t| acc.lcm(&t.denom().to_u64().expect("order fits in u64")))
    }

    pub fn fixed_vars(&self) -> Vec<usize> {
        (0..self.theta.len()).filter(|&i| self.theta[i].is_zero()).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.theta.iter().map(fmt_rat).collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    /// Sorted by phase vector.
    pub elements: Vec<GroupElement>,
    pub generators: Vec<GroupElement>,
    pub j: GroupElement,
    pub contains_j: bool,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn is_cyclic_on_j(&self) -> bool {
        self.j.order() as usize == self.order()
    }
}

/// Solve B·q = 1 for the unique weights, returned as (q, d, n) with q_i = n_i/d.
pub fn compute_weights(w: &Poly) -> Result<(Vec<Rational>, u64, Vec<u64>)> {
    let nv = w.nvars();
    let rows: Vec<Vec<Rational>> = w
        .terms()
        .map(|(m, _)| {
            let mut r: Vec<Rational> = m.0.iter().map(|&e| rint(e as i64)).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    if rows.is_empty() || nv == 0 {
        return Err(QsingError::NonUniqueWeights { rank: 0, nvars: nv });
    }
    let aug = RatMatrix::from_rows(rows);
    let (rr, pivots) = aug.rref();
    if pivots.contains(&nv) {
        return Err(QsingError::NotQuasiHomogeneous);
    }
    if pivots.len() < nv {
        return Err(QsingError::NonUniqueWeights { rank: pivots.len(), nvars: nv });
    }
    let mut q = vec![Rational::zero(); nv];
    for (r, &p) in pivots.iter().enumerate() {
        q[p] = rr.data[r][nv].clone();
    }
    if q.iter().any(|x| !x.is_positive()) {
        return Err(QsingError::NoPositiveSolution);
    }
    let d = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let d = d.to_u64().expect("weight denominator fits in u64");
    let n = q.iter().map(|x| (x * rint(d as i64)).to_integer().to_u64().unwrap()).collect();
    Ok((q, d, n))
}

/// Weights, zero-dimensionality of Jac(W), central charge and Milnor number.
pub fn check_nondegenerate(w: &Poly, vars: Vec<String>) -> Result<QSingularity> {
    let nv = w.nvars();
    for i in 0..nv {
        if w.terms().all(|(m, _)| m.0[i] == 0) {
            return Err(QsingError::NonUniqueWeights { rank: nv - 1, nvars: nv });
        }
    }
    let (q, d, n) = compute_weights(w)?;
    let jac: Vec<Poly> = (0..nv).map(|i| w.derivative(i)).collect();
    let gb = groebner_basis(&jac);
    let std = standard_monomials(&gb, nv).ok_or(QsingError::NonIsolatedSingularity)?;
    if std.is_empty() {
        return Err(QsingError::NotSingular);
    }
    let c_hat = q.iter().fold(Rational::zero(), |acc, x| acc + Rational::one() - x * rint(2));
    let mu_formula = q.iter().fold(Rational::one(), |acc, x| acc * (x.recip() - Rational::one()));
    if mu_formula != rint(std.len() as i64) {
        return Err(QsingError::Internal(format!(
            "Milnor number {} disagrees with weight formula {}",
            std.len(),
            fmt_rat(&mu_formula)
        )));
    }
    let b = IntMatrix::from_i64(&w.terms().map(|(m, _)| m.0.iter().map(|&e| e as i64).collect()).collect::<Vec<_>>());
    Ok(QSingularity { w: w.clone(), vars, b, q, d, n, c_hat, mu: std.len() })
}

pub fn exponential_grading_element(s: &QSingularity) -> GroupElement {
    GroupElement::new(s.q.clone())
}

/// All Θ with B·Θ ∈ Z^s, from the Smith form of B.
pub fn max_diagonal_group(s: &QSingularity) -> SymmetryGroup {
    let nv = s.nvars();
    let (_v, t, qm) = smith_normal_form(&s.b);
    let qinv = RatMatrix::from_rows(
        qm.data.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect(),
    )
    .inverse()
    .expect("unimodular");
    let diag = t.diagonal();
    let mut gens = Vec::new();
    for l in 0..nv {
        let tl = diag.get(l).cloned().unwrap_or_else(BigInt::zero).abs();
        assert!(!tl.is_zero(), "full column rank");
        if tl.is_one() {
            continue;
        }
        // Θ = Q⁻¹ e_l / t_l
        let th: Vec<Rational> = (0..nv).map(|i| qinv.data[i][l].clone() / Rational::from_integer(tl.clone())).collect();
        gens.push(GroupElement::new(th));
    }
    let j = exponential_grading_element(s);
    let elements = closure(nv, &gens);
    let contains_j = elements.binary_search(&j).is_ok();
    debug_assert!(elements.iter().all(|g| preserves(s, g)));
    SymmetryGroup { elements, generators: gens, j, contains_j }
}

fn preserves(s: &QSingularity, g: &GroupElement) -> bool {
    s.b.data.iter().all(|row| {
        let tot = row.iter().zip(&g.theta).fold(Rational::zero(), |acc, (b, t)| acc + Rational::from_integer(b.clone()) * t);
        tot.is_integer()
    })
}

fn closure(nv: usize, gens: &[GroupElement]) -> Vec<GroupElement> {
    let mut seen = BTreeSet::new();
    let id = GroupElement::identity(nv);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn subgroup_from_generators(gw: &SymmetryGroup, gens: &[GroupElement]) -> Result<SymmetryGroup> {
    let nv = gw.j.theta.len();
    let mut uniq: Vec<GroupElement> = Vec::new();
    for g in gens {
        let g = GroupElement::new(g.theta.clone());
        if !gw.contains(&g) {
            return Err(QsingError::ElementNotInGroup(g.to_string()));
        }
        if !uniq.contains(&g) {
            uniq.push(g);
        }
    }
    let elements = closure(nv, &uniq);
    if elements.binary_search(&gw.j).is_err() {
        return Err(QsingError::MissingJ);
    }
    Ok(SymmetryGroup { elements, generators: uniq, j: gw.j.clone(), contains_j: true })
}

/// ⟨J⟩ inside the maximal group.
pub fn j_subgroup(s: &QSingularity) -> SymmetryGroup {
    let gw = max_diagonal_group(s);
    let j = gw.j.clone();
    subgroup_from_generators(&gw, &[j]).expect("J is always diagonal")
}
