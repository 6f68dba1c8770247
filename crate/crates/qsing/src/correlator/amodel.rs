//! A-model three- and four-point evaluation on canonical state-space classes.

use exactalg::rational::sqrt_exact;
use exactalg::{rint, RatMatrix, Rational};
use num_traits::{One, Zero};

use super::algebra::{CorrelatorTable, Entry, FrobeniusAlgebra, Provenance};
use crate::error::{QsingError, Result};
use crate::moduli::{b2, classify_concavity, Concavity, CorrelatorFrame};
use crate::singular::QSingularity;
use crate::statespace::StateSpace;

/// Sign choice for every square root taken when solving Ramond three-point values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gauge(pub i64);

impl Gauge {
    pub const PLUS: Gauge = Gauge(1);
    pub const MINUS: Gauge = Gauge(-1);

    pub fn sign(&self) -> Rational {
        rint(self.0.signum())
    }
}

fn frame_of(h: &StateSpace, key: &[usize]) -> CorrelatorFrame {
    CorrelatorFrame::new(&h.sing.q, 0, key.iter().map(|&i| h.gamma(i).clone()).collect())
}

fn dimension_ok(h: &StateSpace, key: &[usize]) -> bool {
    let total = key.iter().fold(Rational::zero(), |acc, &i| acc + h.deg_w(i));
    total == (&h.sing.c_hat + rint(key.len() as i64 - 3)) * rint(2)
}

fn describe(h: &StateSpace, key: &[usize]) -> String {
    format!("<{}>", key.iter().map(|&i| h.label(i)).collect::<Vec<_>>().join(", "))
}

/// Registered degrees of Witten maps for index-zero frames.
pub fn witten_degree_lookup(s: &QSingularity, degrees: &[i64]) -> Result<i64> {
    let mut rows = s.exponent_rows();
    rows.sort();
    let monic = s.w.terms().all(|(_, c)| c.is_one());
    if monic && degrees == [-2, 0] && rows.len() == 2 {
        // x^3 + x y^3
        if rows == vec![vec![1, 3], vec![3, 0]] {
            return Ok(-3);
        }
        // x^n + x y^2
        if rows[0] == vec![1, 2] && rows[1][1] == 0 && rows[1][0] >= 2 {
            return Ok(-2);
        }
    }
    Err(QsingError::NotInRegistry(format!("{} with bundle degrees {:?}", s.w.render(&s.vars), degrees)))
}

pub fn three_point(h: &StateSpace, gauge: Gauge, key: [usize; 3]) -> Result<Entry> {
    if !dimension_ok(h, &key) {
        return Ok(Entry { value: Rational::zero(), provenance: Provenance::DimensionZero });
    }
    let frame = frame_of(h, &key);
    if !frame.nonempty {
        return Ok(Entry { value: Rational::zero(), provenance: Provenance::SelectionZero });
    }
    if let Some(p) = key.iter().position(|&i| i == h.unit) {
        let rest: Vec<usize> = (0..3).filter(|&x| x != p).map(|x| key[x]).collect();
        return Ok(Entry { value: h.eta.data[rest[0]][rest[1]].clone(), provenance: Provenance::Pairing });
    }
    let ramond: Vec<usize> = (0..3).filter(|&x| h.is_ramond(key[x])).collect();
    match ramond.len() {
        0 => match classify_concavity(&frame) {
            Concavity::Concave => {
                let deg = frame.integer_degrees().unwrap();
                let v = if deg.iter().all(|&d| d == -1) { Rational::one() } else { Rational::zero() };
                Ok(Entry { value: v, provenance: Provenance::Concave })
            }
            Concavity::IndexZero => {
                let deg = frame.integer_degrees().unwrap();
                let v = witten_degree_lookup(&h.sing, &deg)?;
                Ok(Entry { value: rint(v), provenance: Provenance::IndexZeroRegistry })
            }
            _ => Err(QsingError::Unevaluable(describe(h, &key))),
        },
        1 => {
            let r = key[ramond[0]];
            let ns: Vec<usize> = (0..3).filter(|&x| x != ramond[0]).map(|x| key[x]).collect();
            let v = solve_ramond_three_point(h, gauge, ns[0], ns[1], r)?;
            Ok(Entry { value: v, provenance: Provenance::CompositionSolve })
        }
        _ => Err(QsingError::Unevaluable(describe(h, &key))),
    }
}

/// Solve ⟨α,β,r⟩ from the index-zero value of ⟨α,β,α,β⟩ restricted to the
/// boundary divisor separating {α,β} from {α,β}, whose node lies in r's sector.
pub fn solve_ramond_three_point(h: &StateSpace, gauge: Gauge, alpha: usize, beta: usize, r: usize) -> Result<Rational> {
    let sec = h.classes[r].sector;
    let gamma = &h.sectors[sec].gamma;
    if &gamma.inverse() != gamma {
        return Err(QsingError::Underdetermined(format!("sector {gamma} is not self-inverse")));
    }
    let frame = frame_of(h, &[alpha, beta, alpha, beta]);
    if classify_concavity(&frame) != Concavity::IndexZero {
        return Err(QsingError::Unevaluable(format!("{} (boundary frame is not index-zero)", describe(h, &[alpha, beta, r]))));
    }
    let d = rint(witten_degree_lookup(&h.sing, &frame.integer_degrees().unwrap())?);
    let idx: Vec<usize> = (0..h.dim()).filter(|&i| h.classes[i].sector == sec).collect();
    let eta_r = RatMatrix::from_rows(idx.iter().map(|&a| idx.iter().map(|&b| h.eta.data[a][b].clone()).collect()).collect());
    let inv = eta_r.inverse().ok_or_else(|| QsingError::Internal("Ramond pairing block is degenerate".into()))?;
    // Σ u_μ (η⁻¹)_{μν} u_ν = d with u supported on the first admissible direction.
    for (k, &cls) in idx.iter().enumerate() {
        let e = &inv.data[k][k];
        if e.is_zero() {
            continue;
        }
        if let Some(root) = sqrt_exact(&(&d / e)) {
            return Ok(if cls == r { root * gauge.sign() } else { Rational::zero() });
        }
    }
    Err(QsingError::Underdetermined(format!("no rational solution for {}", describe(h, &[alpha, beta, r]))))
}

/// Genus-zero four-point value of a concave all-NS frame from the codimension-one
/// orbifold Grothendieck–Riemann–Roch formula.
pub fn four_point_ogrr(h: &StateSpace, key: [usize; 4]) -> Result<Rational> {
    let frame = frame_of(h, &key);
    if !frame.nonempty || key.iter().any(|&i| h.is_ramond(i)) || classify_concavity(&frame) != Concavity::Concave {
        return Err(QsingError::NotConcave);
    }
    let q = &h.sing.q;
    let mut total = Rational::zero();
    for (l, ql) in q.iter().enumerate() {
        let mut t = ql * ql / rint(2) - ql / rint(2) + Rational::new(1.into(), 12.into());
        for &i in &key {
            t -= b2(&h.gamma(i).theta[l]);
        }
        for (a, b) in [(0, 1), (0, 2), (0, 3)] {
            t += b2(&(ql - &h.gamma(key[a]).theta[l] - &h.gamma(key[b]).theta[l]));
        }
        total += t;
    }
    Ok(total)
}

/// Any genus-zero frame the axioms evaluate directly (three points, or concave NS four points).
pub fn evaluate_frame(h: &StateSpace, gauge: Gauge, key: &[usize]) -> Result<Entry> {
    match key.len() {
        3 => three_point(h, gauge, [key[0], key[1], key[2]]),
        4 => {
            if !dimension_ok(h, key) {
                return Ok(Entry { value: Rational::zero(), provenance: Provenance::DimensionZero });
            }
            if !frame_of(h, key).nonempty {
                return Ok(Entry { value: Rational::zero(), provenance: Provenance::SelectionZero });
            }
            if key.contains(&h.unit) {
                return Ok(Entry { value: Rational::zero(), provenance: Provenance::Pairing });
            }
            match four_point_ogrr(h, [key[0], key[1], key[2], key[3]]) {
                Ok(v) => Ok(Entry { value: v, provenance: Provenance::OGrr }),
                Err(_) => Err(QsingError::Unevaluable(describe(h, key))),
            }
        }
        _ => Err(QsingError::Unevaluable(describe(h, key))),
    }
}

/// Expand a correlator of vectors multilinearly over basis keys.
pub fn multilinear(vecs: &[Vec<Rational>], mut f: impl FnMut(&[usize]) -> Result<Rational>) -> Result<Rational> {
    let mut total = Rational::zero();
    let mut key = vec![0usize; vecs.len()];
    fn rec(
        vecs: &[Vec<Rational>],
        pos: usize,
        coef: Rational,
        key: &mut Vec<usize>,
        total: &mut Rational,
        f: &mut dyn FnMut(&[usize]) -> Result<Rational>,
    ) -> Result<()> {
        if pos == vecs.len() {
            *total += coef * f(key)?;
            return Ok(());
        }
        for (i, c) in vecs[pos].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            key[pos] = i;
            rec(vecs, pos + 1, &coef * c, key, total, f)?;
        }
        Ok(())
    }
    rec(vecs, 0, Rational::one(), &mut key, &mut total, &mut f)?;
    Ok(total)
}

/// ⋆ on H from the three-point table; fails if any three-point value is unevaluable.
pub fn frobenius_algebra(h: &StateSpace, gauge: Gauge) -> Result<(FrobeniusAlgebra, CorrelatorTable)> {
    let n = h.dim();
    let mut table = CorrelatorTable::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let e = three_point(h, gauge, [i, j, k])?;
                table.insert(0, &[i, j, k], e.value, e.provenance);
            }
        }
    }
    let labels = (0..n).map(|i| h.label(i)).collect();
    let degrees = (0..n).map(|i| h.deg_w(i) / rint(2)).collect();
    let alg = FrobeniusAlgebra::new(
        labels,
        degrees,
        h.sing.c_hat.clone(),
        h.eta.clone(),
        |i, j, k| table.get(0, &[i, j, k]).unwrap().value.clone(),
        h.unit,
    )?;
    if !alg.is_associative() {
        return Err(QsingError::Internal("three-point data is not associative".into()));
    }
    Ok((alg, table))
}
