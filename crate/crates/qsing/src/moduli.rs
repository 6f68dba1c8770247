//! Decorated genus-zero frames: line-bundle degrees, selection rule,
//! boundary decorations of four-point spaces, concavity.

use exactalg::rational::frac;
use exactalg::{rint, Rational};
use num_traits::{ToPrimitive, Zero};

use crate::error::{QsingError, Result};
use crate::singular::{GroupElement, SymmetryGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelatorFrame {
    pub genus: u32,
    pub insertions: Vec<GroupElement>,
    /// deg|L_j|, integral exactly when `nonempty`.
    pub bundle_degrees: Vec<Rational>,
    pub nonempty: bool,
}

impl CorrelatorFrame {
    pub fn new(q: &[Rational], genus: u32, insertions: Vec<GroupElement>) -> Self {
        let bundle_degrees = bundle_degrees(q, genus, &insertions);
        let nonempty = bundle_degrees.iter().all(|d| d.is_integer());
        CorrelatorFrame { genus, insertions, bundle_degrees, nonempty }
    }

    pub fn k(&self) -> usize {
        self.insertions.len()
    }

    pub fn integer_degrees(&self) -> Option<Vec<i64>> {
        self.nonempty.then(|| self.bundle_degrees.iter().map(|d| d.to_integer().to_i64().unwrap()).collect())
    }
}

/// deg|L_j| = q_j(2g−2+k) − Σ_l Θ_j^{γ_l}.
pub fn bundle_degrees(q: &[Rational], genus: u32, insertions: &[GroupElement]) -> Vec<Rational> {
    let chi = rint(2 * genus as i64 - 2 + insertions.len() as i64);
    (0..q.len())
        .map(|j| insertions.iter().fold(&q[j] * &chi, |acc, g| acc - &g.theta[j]))
        .collect()
}

pub fn selection_rule(frame: &CorrelatorFrame) -> bool {
    frame.nonempty
}

/// Πγ_i = J^{2g−2+k} in the torus.
pub fn group_identity_holds(j: &GroupElement, frame: &CorrelatorFrame) -> bool {
    let prod = frame.insertions.iter().fold(GroupElement::identity(j.theta.len()), |acc, g| acc.mul(g));
    prod == j.pow(2 * frame.genus as i64 - 2 + frame.k() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryChannel {
    pub left: (usize, usize),
    pub right: (usize, usize),
    /// Decoration of the node branch on the `left` component.
    pub node: GroupElement,
    pub multiplicity: usize,
}

const PAIRINGS: [((usize, usize), (usize, usize)); 3] = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];

/// The three boundary divisors of a genus-zero four-point frame, merged when
/// their unordered decorations coincide.
pub fn boundary_node_decorations(
    q: &[Rational],
    frame: &CorrelatorFrame,
    group: Option<&SymmetryGroup>,
) -> Result<Vec<BoundaryChannel>> {
    if frame.genus != 0 || frame.k() != 4 || !frame.nonempty {
        return Err(QsingError::InvalidArgument("boundary decorations need a nonempty genus-zero four-point frame".into()));
    }
    let ins = &frame.insertions;
    let mut out: Vec<BoundaryChannel> = Vec::new();
    for (l, r) in PAIRINGS {
        let node = GroupElement::new(
            (0..q.len()).map(|j| &q[j] - &ins[l.0].theta[j] - &ins[l.1].theta[j]).collect(),
        );
        if let Some(g) = group {
            if !g.contains(&node) {
                return Err(QsingError::NodeNotInGroup(node.to_string()));
            }
        }
        let key = |c: &BoundaryChannel| {
            let mut a = [ins[c.left.0].clone(), ins[c.left.1].clone()];
            a.sort();
            let mut b = [ins[c.right.0].clone(), ins[c.right.1].clone()];
            b.sort();
            let (mut na, mut nb) = (c.node.clone(), c.node.inverse());
            if a > b {
                std::mem::swap(&mut a, &mut b);
                std::mem::swap(&mut na, &mut nb);
            }
            (a, b, na)
        };
        let ch = BoundaryChannel { left: l, right: r, node, multiplicity: 1 };
        match out.iter_mut().find(|c| key(c) == key(&ch)) {
            Some(c) => c.multiplicity += 1,
            None => out.push(ch),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Concavity {
    Concave,
    IndexZero,
    Ramond,
    Other,
}

/// h⁰ and h¹ of the genus-zero line bundles with the given degrees.
pub fn cohomology_ranks(degrees: &[i64]) -> (i64, i64) {
    let h0 = degrees.iter().map(|&d| (d + 1).max(0)).sum();
    let h1 = degrees.iter().map(|&d| (-d - 1).max(0)).sum();
    (h0, h1)
}

pub fn classify_concavity(frame: &CorrelatorFrame) -> Concavity {
    if frame.insertions.iter().any(|g| g.theta.iter().any(|t| t.is_zero())) {
        return Concavity::Ramond;
    }
    let Some(deg) = frame.integer_degrees() else {
        return Concavity::Other;
    };
    if frame.genus == 0 && deg.iter().all(|&d| d <= -1) && boundary_concave(frame) {
        return Concavity::Concave;
    }
    let (h0, h1) = cohomology_ranks(&deg);
    if frame.genus == 0 && h0 == h1 && h0 > 0 {
        Concavity::IndexZero
    } else {
        Concavity::Other
    }
}

/// No section appears over the codimension-one boundary either. At a twisted
/// node both components must have degree ≤ −1; at an untwisted node sections
/// glue, so at most one section may exist before gluing.
fn boundary_concave(frame: &CorrelatorFrame) -> bool {
    let k = frame.k();
    let n = frame.insertions.first().map_or(0, |g| g.theta.len());
    // q_j recovered from the generic degree q(k−2) − ΣΘ
    let q: Vec<Rational> = (0..n)
        .map(|j| {
            let s = frame.insertions.iter().fold(Rational::zero(), |acc, g| acc + &g.theta[j]);
            (&frame.bundle_degrees[j] + s) / rint(k as i64 - 2)
        })
        .collect();
    let component = |part: &[usize], j: usize| -> (Rational, bool) {
        let raw = part.iter().fold(&q[j] * rint(part.len() as i64 - 1), |acc, &i| acc - &frame.insertions[i].theta[j]);
        let node = frac(&raw);
        (raw - &node, node.is_zero())
    };
    let h0 = |d: &Rational| if d >= &rint(0) { d + rint(1) } else { Rational::zero() };
    (1u32..(1 << k) - 1).filter(|m| m & 1 == 1).all(|mask| {
        let side: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        let other: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) == 0).collect();
        if side.len() < 2 || other.len() < 2 {
            return true;
        }
        (0..n).all(|j| {
            let ((d1, untwisted), (d2, _)) = (component(&side, j), component(&other, j));
            if untwisted {
                h0(&d1) + h0(&d2) <= rint(1)
            } else {
                d1 <= rint(-1) && d2 <= rint(-1)
            }
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphShape {
    Corolla,
    /// One separating edge decorated by an element of the given order.
    Tree { edge_order: u64 },
    /// One non-separating edge.
    Loop { edge_order: u64 },
}

/// Degree of the stabilization map: |G|^{2g−1} on the open stratum, divided by
/// the ramification |⟨γ⟩| on a boundary graph (loop graphs carry |G|^{2g−2}/|⟨γ⟩|).
pub fn stabilization_degree(group_order: u64, genus: u32, shape: GraphShape) -> Rational {
    let g = rint(group_order as i64);
    let pow = |e: i64| -> Rational {
        if e >= 0 {
            num_traits::pow(g.clone(), e as usize)
        } else {
            num_traits::pow(g.recip(), (-e) as usize)
        }
    };
    let e = 2 * genus as i64;
    match shape {
        GraphShape::Corolla => pow(e - 1),
        GraphShape::Tree { edge_order } => pow(e - 1) / rint(edge_order as i64),
        GraphShape::Loop { edge_order } => pow(e - 2) / rint(edge_order as i64),
    }
}

/// The Bernoulli-type term 1/12 − Θ(1−Θ)/2 attached to a marking or node phase.
pub fn b2(theta: &Rational) -> Rational {
    let t = frac(theta);
    Rational::new(1.into(), 12.into()) - &t * (Rational::from_integer(1.into()) - &t) / rint(2)
}
