#![allow(dead_code)]

use exactalg::{rat, rint, RatMatrix, Rational};
use num_traits::Zero;
use qsing::moduli::b2;

/// All nondecreasing k-tuples over 0..n.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut key = vec![0usize; k];
    loop {
        out.push(key.clone());
        let mut p = k;
        while p > 0 && key[p - 1] == n - 1 {
            p -= 1;
        }
        if p == 0 {
            return out;
        }
        key[p - 1] += 1;
        let v = key[p - 1];
        for x in key.iter_mut().skip(p) {
            *x = v;
        }
    }
}

/// Per-line summand of the codimension-one formula on a genus-zero four-point frame.
pub fn line_term(q: &Rational, thetas: [&Rational; 4]) -> Rational {
    let mut t = q * q / rint(2) - q / rint(2) + rat(1, 12);
    for th in thetas {
        t -= b2(th);
    }
    for (a, b) in [(0, 1), (0, 2), (0, 3)] {
        t += b2(&(q - thetas[a] - thetas[b]));
    }
    t
}

/// Σ_{j=1}^{r−1} ζ^{(a+1)j}/(1−ζ^j)², computed as a trace over Q[x]/(1+x+⋯+x^{r−1}).
pub fn root_sum(r: usize, a: usize) -> Rational {
    if r == 1 {
        return Rational::zero();
    }
    let m = r - 1;
    // x^k reduced modulo the cyclotomic-type relation x^{r−1} = −(1+⋯+x^{r−2})
    let reduce = |k: usize| -> Vec<Rational> {
        let k = k % r;
        if k < m {
            (0..m).map(|i| if i == k { rint(1) } else { Rational::zero() }).collect()
        } else {
            vec![rint(-1); m]
        }
    };
    // multiplication by (1−x)² = 1 − 2x + x²
    let mut cols = Vec::with_capacity(m);
    for i in 0..m {
        let mut col = vec![Rational::zero(); m];
        for (e, c) in [(i, rint(1)), (i + 1, rint(-2)), (i + 2, rint(1))] {
            for (o, v) in col.iter_mut().zip(reduce(e)) {
                *o += &c * v;
            }
        }
        cols.push(col);
    }
    let mat = RatMatrix::from_rows(cols).transpose();
    let g = mat.solve(&reduce(a + 1)).expect("(1−x)² is invertible");
    // trace of x^k over the nontrivial r-th roots: r−1 for k = 0, −1 otherwise
    g.iter().enumerate().fold(Rational::zero(), |acc, (k, c)| acc + c * if k == 0 { rint(m as i64) } else { rint(-1) })
}

