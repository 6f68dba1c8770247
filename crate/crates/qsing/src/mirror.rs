//! Graded Frobenius-algebra isomorphisms between A-model rings and Milnor
//! rings, and comparison of the resulting primary potentials.

use exactalg::{fmt_rat, Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, Zero};

use crate::correlator::{FrobeniusAlgebra, PotentialSeries};
use crate::error::{QsingError, Result};
use crate::milnor::MilnorRing;
use crate::saito::BPotential;

/// α^exponent = value, the normalization making the pairings agree on the nose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingCondition {
    pub exponent: u64,
    pub value: Rational,
}

impl std::fmt::Display for ScalingCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "alpha^{} = {}", self.exponent, fmt_rat(&self.value))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorIso {
    /// A-vector of each B-ring generator.
    pub images: Vec<Vec<Rational>>,
    /// A-vector of each Milnor basis monomial.
    pub basis_images: Vec<Vec<Rational>>,
    /// A-pairing / residue pairing, constant over complementary pairs.
    pub rho: Rational,
    pub scaling: ScalingCondition,
}

fn eval_at(alg: &FrobeniusAlgebra, p: &Poly, images: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); alg.dim()];
    for (m, c) in p.terms() {
        let v = monomial_image(alg, m, images);
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

fn monomial_image(alg: &FrobeniusAlgebra, m: &Monomial, images: &[Vec<Rational>]) -> Vec<Rational> {
    m.0.iter().zip(images).fold(alg.basis_vector(alg.unit), |acc, (&e, img)| alg.product(&acc, &alg.power(img, e)))
}

/// Check that x_i ↦ images[i] extends to a graded isomorphism B → A and find
/// the pairing ratio.
pub fn verify_ring_isomorphism(a: &FrobeniusAlgebra, b: &MilnorRing, images: &[Vec<Rational>]) -> Result<MirrorIso> {
    if images.len() != b.nvars {
        return Err(QsingError::InvalidArgument(format!("{} images for {} generators", images.len(), b.nvars)));
    }
    for (i, img) in images.iter().enumerate() {
        if img.len() != a.dim() {
            return Err(QsingError::InvalidArgument(format!("image {i} has the wrong length")));
        }
        for (k, c) in img.iter().enumerate() {
            if !c.is_zero() && a.degrees[k] != b.q[i] {
                return Err(QsingError::RelationFails(format!(
                    "generator {i} has weight {} but its image involves {} of degree {}",
                    fmt_rat(&b.q[i]),
                    a.labels[k],
                    fmt_rat(&a.degrees[k])
                )));
            }
        }
    }
    for (i, rel) in (0..b.nvars).map(|i| (i, b.w.derivative(i))) {
        if eval_at(a, &rel, images).iter().any(|c| !c.is_zero()) {
            return Err(QsingError::RelationFails(format!("d/dx{i} of W does not vanish on the images")));
        }
    }
    let basis_images: Vec<Vec<Rational>> = b.basis.iter().map(|m| monomial_image(a, m, images)).collect();
    let rank = RatMatrix::from_rows(basis_images.clone()).rank();
    if rank != a.dim() || b.mu != a.dim() {
        return Err(QsingError::DimensionMismatch { image: rank, target: a.dim() });
    }
    let mut rho: Option<Rational> = None;
    for i in 0..b.mu {
        for j in 0..b.mu {
            let av = a.pairing(&basis_images[i], &basis_images[j]);
            let bv = b.residue_pairing(&b.monomial(i), &b.monomial(j));
            if bv.is_zero() {
                if !av.is_zero() {
                    return Err(QsingError::NonUniformPairingRatio(format!("B pairing vanishes on ({i},{j}) but A does not")));
                }
                continue;
            }
            let r = av / bv;
            match &rho {
                None => rho = Some(r),
                Some(x) if x != &r => {
                    return Err(QsingError::NonUniformPairingRatio(format!("{} vs {}", fmt_rat(x), fmt_rat(&r))))
                }
                _ => {}
            }
        }
    }
    let rho = rho.ok_or_else(|| QsingError::Internal("residue pairing vanishes".into()))?;
    let sing_d = b.q.iter().fold(1u64, |acc, q| num_integer::lcm(acc, q.denom().try_into().unwrap_or(1u64)));
    let exponent = (&b.c_hat * Rational::from_integer(sing_d.into())).to_integer().try_into().unwrap_or(0u64);
    Ok(MirrorIso { images: images.to_vec(), basis_images, rho: rho.clone(), scaling: ScalingCondition { exponent, value: Rational::one() / rho } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialMatch {
    pub lambda: Rational,
    pub verified: bool,
}

/// `identification[i]` is the B coordinate paired with A coordinate i.
/// Checks F₃ coefficientwise, then finds λ with F₄^A = λ F₄^B.
pub fn match_potentials(a: &PotentialSeries, b: &BPotential, identification: &[usize]) -> Result<PotentialMatch> {
    let n = a.labels.len();
    if identification.len() != n || b.labels().len() != n {
        return Err(QsingError::DimensionMismatch { image: identification.len(), target: b.labels().len() });
    }
    let map = |p: &Poly| -> Poly {
        Poly::from_terms(
            n,
            p.terms().map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[identification[i]] += x;
                }
                (Monomial(e), c.clone())
            }),
        )
    };
    let a3 = map(&a.part(3));
    if a3 != b.f3.poly {
        let diff = &a3 - &b.f3.poly;
        return Err(QsingError::CubicMismatch(diff.render(b.labels())));
    }
    let a4 = map(&a.part(4));
    let b4 = &b.f4.poly;
    let mut lambda: Option<Rational> = None;
    for (m, c) in a4.terms() {
        let bc = b4.coeff(m);
        if bc.is_zero() {
            return Err(QsingError::QuarticNotProportional(format!("A has {} where B vanishes", m.render(b.labels()))));
        }
        let r = c / bc;
        match &lambda {
            None => lambda = Some(r),
            Some(x) if x != &r => {
                return Err(QsingError::QuarticNotProportional(format!("ratios {} and {}", fmt_rat(x), fmt_rat(&r))))
            }
            _ => {}
        }
    }
    if let Some((m, _)) = b4.terms().find(|(m, _)| a4.coeff(m).is_zero()) {
        return Err(QsingError::QuarticNotProportional(format!("B has {} where A vanishes", m.render(b.labels()))));
    }
    let lambda = lambda.ok_or_else(|| QsingError::QuarticNotProportional("both quartic parts vanish".into()))?;
    Ok(PotentialMatch { lambda, verified: true })
}
