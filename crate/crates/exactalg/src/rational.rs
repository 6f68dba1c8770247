use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or just `p` for integers.
pub fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Fractional part in [0, 1).
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Exact rational square root, if one exists.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().sqrt();
    let q = r.denom().sqrt();
    if &(&p * &p) == r.numer() && &(&q * &q) == r.denom() {
        Some(BigRational::new(p, q))
    } else {
        None
    }
}

/// Rising factorial (z;k) = z(z+1)...(z+k-1); for k < 0 it is 1/((z-1)(z-2)...(z+k)).
/// Returns None at a pole.
pub fn pochhammer(z: &Rational, k: i64) -> Option<Rational> {
    let mut r = Rational::one();
    if k >= 0 {
        for j in 0..k {
            r *= z + rint(j);
        }
    } else {
        for j in 1..=(-k) {
            let f = z - rint(j);
            if f.is_zero() {
                return None;
            }
            r /= f;
        }
    }
    Some(r)
}
