//! Closed forms (A, D) and coefficient tables (E) at each family's natural base.

use std::collections::BTreeMap;

use exactalg::{rat, rint, Rational};
use num_traits::Zero;

use super::Family;
use crate::error::{QsingError, Result};
use crate::milnor::MilnorRing;

const E6_C4: &[([u32; 4], (i64, i64))] = &[([5, 6, 6, 9], (-1, 4)), ([5, 5, 8, 8], (-1, 3)), ([2, 8, 8, 8], (-1, 3)), ([2, 6, 9, 9], (-1, 4))];

const E7_C4: &[([u32; 4], (i64, i64))] = &[
    ([1, 4, 7, 7], (-1, 3)),
    ([1, 5, 6, 7], (-1, 3)),
    ([1, 6, 6, 6], (-2, 9)),
    ([3, 3, 6, 7], (1, 9)),
    ([3, 4, 5, 7], (-1, 3)),
    ([3, 4, 6, 6], (-1, 9)),
    ([3, 5, 5, 6], (-2, 3)),
    ([4, 4, 4, 7], (-1, 3)),
    ([4, 5, 5, 5], (1, 1)),
];

const E8_C4: &[([u32; 4], (i64, i64))] = &[
    ([7, 7, 7, 10], (-1, 3)),
    ([6, 7, 9, 9], (-1, 5)),
    ([6, 6, 7, 12], (-1, 5)),
    ([4, 9, 9, 9], (-2, 5)),
    ([4, 7, 10, 10], (-1, 3)),
    ([4, 6, 9, 12], (-1, 5)),
    ([1, 10, 10, 10], (-1, 3)),
    ([1, 9, 9, 12], (-1, 5)),
    ([1, 6, 12, 12], (-1, 5)),
];

fn delta(b: bool) -> Rational {
    if b {
        rint(1)
    } else {
        Rational::zero()
    }
}

/// Flat μ³ array of C_ijk.
pub(super) fn three_point(family: &Family, ring: &MilnorRing) -> Vec<Rational> {
    let mu = ring.mu;
    let mut out = vec![Rational::zero(); mu * mu * mu];
    for i in 0..mu {
        for j in 0..mu {
            for k in 0..mu {
                out[(i * mu + j) * mu + k] = c3(family, ring, [i, j, k]);
            }
        }
    }
    out
}

fn c3(family: &Family, ring: &MilnorRing, key: [usize; 3]) -> Rational {
    let e: Vec<&Vec<u32>> = key.iter().map(|&i| &ring.basis[i].0).collect();
    match *family {
        Family::A(n) => delta(e.iter().map(|m| m[0]).sum::<u32>() == n - 1),
        Family::D(n) => {
            let ys: Vec<usize> = (0..3).filter(|&a| e[a][1] == 1).collect();
            match ys.len() {
                0 => delta(e.iter().map(|m| m[0]).sum::<u32>() == n - 1),
                2 => {
                    let other = (0..3).find(|a| !ys.contains(a)).unwrap();
                    if e[other][0] == 0 {
                        rint(-(n as i64))
                    } else {
                        Rational::zero()
                    }
                }
                _ => Rational::zero(),
            }
        }
        _ => {
            let m = &(&ring.monomial(key[0]) * &ring.monomial(key[1])) * &ring.monomial(key[2]);
            family.natural_base() * ring.residue(&m)
        }
    }
}

/// Nonzero C_ijkl on sorted keys.
pub(super) fn four_point(family: &Family, ring: &MilnorRing) -> Result<BTreeMap<Vec<usize>, Rational>> {
    let mu = ring.mu;
    let mut out = BTreeMap::new();
    let table = match family {
        Family::E6 => Some(E6_C4),
        Family::E7 => Some(E7_C4),
        Family::E8 => Some(E8_C4),
        _ => None,
    };
    if let Some(t) = table {
        for (labels, (p, q)) in t {
            let mut key = labels
                .iter()
                .map(|l| {
                    (0..mu)
                        .find(|&i| family.suffix(ring, i) == l.to_string())
                        .ok_or_else(|| QsingError::Internal(format!("no basis element s{l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            key.sort_unstable();
            out.insert(key, rat(*p, *q));
        }
        return Ok(out);
    }
    for a in 0..mu {
        for b in a..mu {
            for c in b..mu {
                for d in c..mu {
                    let v = c4_closed(family, ring, [a, b, c, d]);
                    if !v.is_zero() {
                        out.insert(vec![a, b, c, d], v);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn c4_closed(family: &Family, ring: &MilnorRing, key: [usize; 4]) -> Rational {
    let e: Vec<&Vec<u32>> = key.iter().map(|&i| &ring.basis[i].0).collect();
    match *family {
        Family::A(n) => {
            let (n, [i, j, k, l]) = (n as i64, [0, 1, 2, 3].map(|a| e[a][0] as i64));
            if i + j + k + l != 2 * n {
                return Rational::zero();
            }
            let t = |a: i64, b: i64| if a + b < n { n - a - b } else { 0 };
            rat(-(l - t(j, k) - t(i, k) - t(i, j)), n + 1)
        }
        Family::D(n) => {
            let n = n as i64;
            let ys = e.iter().filter(|m| m[1] == 1).count();
            match ys {
                0 => {
                    let [i, j, k, l] = [0, 1, 2, 3].map(|a| e[a][0] as i64);
                    if i + j + k + l != 2 * n - 1 {
                        return Rational::zero();
                    }
                    let t = |a: i64, b: i64| if a + b < n { rint(n - a - b) - rat(1, 2) } else { Rational::zero() };
                    -(rint(l) - t(i, j) - t(j, k) - t(i, k)) / rint(n)
                }
                2 => {
                    let s: i64 = e.iter().filter(|m| m[1] == 0).map(|m| m[0] as i64).sum();
                    if s == n {
                        rat(-1, 2)
                    } else {
                        Rational::zero()
                    }
                }
                _ => Rational::zero(),
            }
        }
        _ => Rational::zero(),
    }
}
