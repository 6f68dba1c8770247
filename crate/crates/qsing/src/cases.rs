//! Named presets: each pairs an A-model (polynomial and group) with the Milnor
//! ring it is mirror to, the generator images, the basic four-point
//! correlators, and the B-model it is compared against.

use std::fmt;

use exactalg::{parse_polynomial, rat, rint, Monomial, Rational};
use num_traits::Zero;

use crate::correlator::{
    evaluate_frame, frobenius_algebra, genus_zero_potential, multilinear, FrobeniusAlgebra, Gauge, MonomialPresentation,
    PotentialSeries, Wdvv,
};
use crate::error::{QsingError, Result};
use crate::milnor::MilnorRing;
use crate::mirror::{match_potentials, verify_ring_isomorphism, MirrorIso, ScalingCondition};
use crate::saito::{bmodel_correlators, bmodel_potential, BPotential, Family};
use crate::singular::{j_subgroup, max_diagonal_group, GroupElement, QSingularity, SymmetryGroup};
use crate::statespace::{build_state_space, StateSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// x^{n+1} with ⟨J⟩.
    A(u32),
    /// x^n + x y² with the maximal group, against A_{2n−1}.
    DMax(u32),
    /// x^n + x y² with ⟨J⟩, n odd.
    DOdd(u32),
    /// x^n y + y² with the maximal group, against D_{n+1}.
    DT(u32),
    E6,
    E7,
    E8,
}

impl CaseId {
    /// `A:n`, `D:n`, `Dodd:n`, `DT:n`, `E6`, `E7`, `E8`.
    pub fn parse(tag: &str) -> Result<CaseId> {
        let bad = || QsingError::UnknownFamily(tag.to_string());
        let (head, arg) = match tag.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<u32>().map_err(|_| bad())?)),
            None => (tag, None),
        };
        Ok(match (head, arg) {
            ("A", Some(n)) if n >= 2 => CaseId::A(n),
            ("D", Some(n)) if n >= 3 => CaseId::DMax(n),
            ("Dodd", Some(n)) if n >= 5 && n % 2 == 1 => CaseId::DOdd(n),
            ("DT", Some(n)) if n >= 3 => CaseId::DT(n),
            ("E6", None) => CaseId::E6,
            ("E7", None) => CaseId::E7,
            ("E8", None) => CaseId::E8,
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::A(n) => write!(f, "A:{n}"),
            CaseId::DMax(n) => write!(f, "D:{n}"),
            CaseId::DOdd(n) => write!(f, "Dodd:{n}"),
            CaseId::DT(n) => write!(f, "DT:{n}"),
            CaseId::E6 => write!(f, "E6"),
            CaseId::E7 => write!(f, "E7"),
            CaseId::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub id: CaseId,
    pub sing: QSingularity,
    pub group: SymmetryGroup,
    /// The Milnor ring the A-model ring is isomorphic to.
    pub ring: MilnorRing,
    pub b_family: Family,
    /// The published matching scalar, where one is claimed.
    pub claimed_lambda: Option<Rational>,
}

/// The A-model side of a case, rewritten on the monomial basis of `ring`.
#[derive(Clone, Debug)]
pub struct AModel {
    pub space: StateSpace,
    pub alg: FrobeniusAlgebra,
    pub iso: MirrorIso,
    pub pres: MonomialPresentation,
    pub basics: Vec<(Vec<usize>, Rational)>,
    pub gauge: Gauge,
}

impl AModel {
    /// Reconstruction on the monomial basis: basics, then anything the axioms
    /// evaluate directly, then WDVV.
    pub fn wdvv(&self) -> Wdvv<'_> {
        let (h, images, gauge) = (&self.space, &self.iso.basis_images, self.gauge);
        Wdvv::new(&self.pres, self.basics.clone()).with_direct(move |k| {
            let vecs: Vec<Vec<Rational>> = k.iter().map(|&i| images[i].clone()).collect();
            multilinear(&vecs, |f| evaluate_frame(h, gauge, f).map(|e| e.value))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorCheck {
    pub case: CaseId,
    pub rho: Rational,
    pub scaling: ScalingCondition,
    /// Multiple of dx at which the B-model cubic term equals the A-model one.
    pub b_scale: Rational,
    pub lambda: Rational,
    pub claimed_lambda: Option<Rational>,
    pub verified: bool,
}

impl MirrorCheck {
    pub fn agrees_with_claim(&self) -> Option<bool> {
        self.claimed_lambda.as_ref().map(|c| c == &self.lambda)
    }
}

fn sing(text: &str) -> Result<QSingularity> {
    let vars: Vec<String> = if text.contains('y') { vec!["x".into(), "y".into()] } else { vec!["x".into()] };
    QSingularity::parse(text, Some(&vars))
}

impl Case {
    pub fn parse(tag: &str) -> Result<Case> {
        Case::new(CaseId::parse(tag)?)
    }

    pub fn new(id: CaseId) -> Result<Case> {
        let (text, max, b_family, claimed) = match id {
            CaseId::A(n) => (format!("x^{}", n + 1), false, Family::A(n), None),
            CaseId::DMax(n) => (format!("x^{n}+x*y^2"), true, Family::A(2 * n - 1), Some(rat(-(n as i64), 4 * n as i64 - 5))),
            CaseId::DOdd(n) => (format!("x^{n}+x*y^2"), false, Family::D(n), Some(rint(-1))),
            CaseId::DT(n) => (format!("x^{n}*y+y^2"), true, Family::D(n), Some(rint(1))),
            CaseId::E6 => ("x^3+y^4".into(), false, Family::E6, Some(rint(-1))),
            CaseId::E7 => ("x^3+x*y^3".into(), false, Family::E7, Some(rint(-1))),
            CaseId::E8 => ("x^3+y^5".into(), false, Family::E8, Some(rint(-1))),
        };
        let s = sing(&text)?;
        let group = if max { max_diagonal_group(&s) } else { j_subgroup(&s) };
        let ring = match id {
            CaseId::DMax(n) => {
                let vars = ["x".to_string(), "y".to_string()];
                let (w, _) = parse_polynomial(&format!("x^{n}*y+y^2"), Some(&vars))?;
                MilnorRing::new(&w, &[rat(1, 2 * n as i64), rat(1, 2)])?
            }
            _ => b_family.milnor()?,
        };
        Ok(Case { id, sing: s, group, ring, b_family, claimed_lambda: claimed })
    }

    pub fn state_space(&self) -> Result<StateSpace> {
        build_state_space(&self.sing, &self.group)
    }

    /// The published matching scalar for D with the maximal group is compared
    /// against the A_{2n−1} model at a different normalization, so it is kept
    /// as a note rather than checked.
    pub fn lambda_claim_is_checked(&self) -> bool {
        !matches!(self.id, CaseId::DMax(_))
    }

    fn power(&self, h: &StateSpace, k: i64) -> GroupElement {
        let g = match self.id {
            // λ = (1/n, (2n−1)/2n), with J = λ^{n+1}
            CaseId::DMax(n) => GroupElement::new(vec![rat(1, n as i64), rat(2 * n as i64 - 1, 2 * n as i64)]),
            _ => h.group.j.clone(),
        };
        g.pow(k)
    }

    fn class(&self, h: &StateSpace, k: i64, m: Vec<u32>) -> Result<Vec<Rational>> {
        let g = self.power(h, k);
        let fixed = g.fixed_vars().len();
        let m = if fixed == 0 { vec![] } else { m };
        let i = h
            .find(&g, &Monomial(m.clone()))
            .ok_or_else(|| QsingError::Internal(format!("no class {m:?} in sector {g}")))?;
        let mut v = vec![Rational::zero(); h.dim()];
        v[i] = rint(1);
        Ok(v)
    }

    /// A-vectors of the ring generators; Ramond components carry the gauge sign.
    pub fn images(&self, h: &StateSpace, alg: &FrobeniusAlgebra, gauge: Gauge) -> Result<Vec<Vec<Rational>>> {
        let ns = |k: i64| self.class(h, k, vec![]);
        let scaled = |v: Vec<Rational>, c: Rational| v.into_iter().map(|x| x * &c).collect::<Vec<_>>();
        Ok(match self.id {
            CaseId::A(_) => vec![ns(2)?],
            CaseId::E6 => vec![ns(5)?, ns(10)?],
            CaseId::E7 => vec![ns(7)?, ns(5)?],
            CaseId::E8 => vec![ns(11)?, ns(7)?],
            CaseId::DT(n) => {
                vec![ns(3)?, scaled(self.class(h, 0, vec![n - 1, 0])?, rint(n as i64) * gauge.sign())]
            }
            CaseId::DOdd(n) => {
                let r = self.class(h, 0, vec![(n - 1) / 2, 0])?;
                vec![ns(3)?, scaled(r, rint(-2 * n as i64) * gauge.sign())]
            }
            CaseId::DMax(n) => {
                let x = ns(n as i64 + 2)?;
                let y = scaled(alg.power(&x, n), rat(-1, 2));
                vec![x, y]
            }
        })
    }

    /// Basic four-point correlators as exponent vectors in the ring generators.
    pub fn basic_keys(&self) -> Vec<Vec<Vec<u32>>> {
        let m = |v: &[u32]| v.to_vec();
        match self.id {
            CaseId::A(n) => vec![vec![m(&[1]), m(&[1]), m(&[n - 1]), m(&[n - 1])]],
            CaseId::E6 => vec![
                vec![m(&[0, 1]), m(&[0, 1]), m(&[0, 2]), m(&[1, 2])],
                vec![m(&[1, 0]), m(&[1, 0]), m(&[1, 1]), m(&[1, 1])],
            ],
            CaseId::E7 => vec![
                vec![m(&[1, 0]), m(&[1, 0]), m(&[2, 0]), m(&[1, 1])],
                vec![m(&[0, 1]), m(&[0, 1]), m(&[1, 1]), m(&[2, 1])],
                vec![m(&[1, 0]), m(&[0, 1]), m(&[2, 0]), m(&[2, 0])],
            ],
            CaseId::E8 => vec![
                vec![m(&[0, 1]), m(&[0, 1]), m(&[0, 3]), m(&[1, 3])],
                vec![m(&[1, 0]), m(&[1, 0]), m(&[1, 0]), m(&[1, 3])],
            ],
            CaseId::DMax(n) => vec![vec![m(&[1, 0]), m(&[1, 0]), m(&[2 * n - 2, 0]), m(&[2 * n - 2, 0])]],
            CaseId::DT(n) | CaseId::DOdd(n) => vec![vec![m(&[1, 0]), m(&[1, 0]), m(&[n - 1, 0]), m(&[n - 2, 0])]],
        }
    }

    pub fn a_model(&self, gauge: Gauge) -> Result<AModel> {
        let h = self.state_space()?;
        let (alg, _) = frobenius_algebra(&h, gauge)?;
        let images = self.images(&h, &alg, gauge)?;
        let iso = verify_ring_isomorphism(&alg, &self.ring, &images)?;
        let ident = self.identification()?;
        let b = bmodel_correlators(&self.b_family, &self.b_family.natural_base())?;
        let labels = (0..self.ring.mu).map(|i| format!("T{}", self.b_family.suffix(&b.ring, ident[i]))).collect();
        let degrees = (0..self.ring.mu).map(|i| self.ring.degree(i)).collect();
        let mono = alg.change_basis(&iso.basis_images, labels, degrees)?;
        let exps = self.ring.basis.iter().map(|m| m.0.clone()).collect();
        let pres = MonomialPresentation::new(mono, exps)?;
        let mut basics = Vec::new();
        for key in self.basic_keys() {
            let idx = key
                .iter()
                .map(|e| self.ring.index_of(&Monomial(e.clone())).ok_or_else(|| QsingError::MissingBasic(format!("{e:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let vecs: Vec<Vec<Rational>> = idx.iter().map(|&i| iso.basis_images[i].clone()).collect();
            let v = multilinear(&vecs, |k| evaluate_frame(&h, gauge, k).map(|e| e.value))?;
            basics.push((idx, v));
        }
        Ok(AModel { space: h, alg, iso, pres, basics, gauge })
    }

    /// B basis index for each ring basis monomial.
    pub fn identification(&self) -> Result<Vec<usize>> {
        let b = self.b_family.milnor()?;
        self.ring
            .basis
            .iter()
            .map(|m| {
                (0..b.mu)
                    .find(|&j| {
                        let e = &b.basis[j].0;
                        (0..m.0.len().max(e.len())).all(|k| m.0.get(k).copied().unwrap_or(0) == e.get(k).copied().unwrap_or(0))
                    })
                    .ok_or_else(|| QsingError::Internal(format!("no B basis monomial for {m:?}")))
            })
            .collect()
    }

    /// The B-model at the primitive form that makes its pairing equal the A-model's.
    pub fn b_potential(&self, a: &AModel) -> Result<BPotential> {
        let ident = self.identification()?;
        let base = self.b_family.natural_base();
        let b = bmodel_correlators(&self.b_family, &base)?;
        let n = self.ring.mu;
        let mut ratio: Option<Rational> = None;
        for i in 0..n {
            for j in 0..n {
                let av = &a.pres.alg.eta.data[i][j];
                let bv = &b.alg.eta.data[ident[i]][ident[j]];
                if bv.is_zero() {
                    if !av.is_zero() {
                        return Err(QsingError::NonUniformPairingRatio("pairings have different supports".into()));
                    }
                    continue;
                }
                let r = av / bv;
                match &ratio {
                    None => ratio = Some(r),
                    Some(x) if x != &r => return Err(QsingError::NonUniformPairingRatio("A and B pairings".into())),
                    _ => {}
                }
            }
        }
        let ratio = ratio.ok_or_else(|| QsingError::Internal("pairing vanishes".into()))?;
        bmodel_potential(&self.b_family, &(base * ratio))
    }

    pub fn mirror_check(&self, gauge: Gauge) -> Result<MirrorCheck> {
        let a = self.a_model(gauge)?;
        let fa = a_potential(&a, 4)?;
        let fb = self.b_potential(&a)?;
        let m = match_potentials(&fa, &fb, &self.identification()?)?;
        Ok(MirrorCheck {
            case: self.id,
            rho: a.iso.rho.clone(),
            scaling: a.iso.scaling.clone(),
            b_scale: fb.scale.rational.clone(),
            lambda: m.lambda,
            claimed_lambda: self.claimed_lambda.clone(),
            verified: m.verified,
        })
    }
}

/// F₃ + ⋯ + F_order of the A-model on the monomial basis, by WDVV from the basics.
pub fn a_potential(a: &AModel, order: usize) -> Result<PotentialSeries> {
    let mut w = a.wdvv();
    genus_zero_potential(&a.pres.alg, order, |k| w.eval(k))
}
