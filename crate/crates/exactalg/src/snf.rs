use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: data.len(), cols, data }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m.data[i][j] += &self.data[i][k] * &o.data[k][j];
                }
            }
        }
        m
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.data[i][i].clone()).collect()
    }
}

/// Returns (V, T, Q) with B = V·T·Q, V and Q unimodular and T diagonal with
/// each diagonal entry dividing the next.
pub fn smith_normal_form(b: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (b.rows, b.cols);
    let mut a = b.data.clone();
    let mut v = IntMatrix::identity(r);
    let mut q = IntMatrix::identity(c);

    // Row op rows[i] += k*rows[t] on A corresponds to V.col[t] -= k*V.col[i].
    let row_add = |a: &mut Vec<Vec<BigInt>>, v: &mut IntMatrix, i: usize, t: usize, k: &BigInt| {
        for j in 0..c {
            let d = &a[t][j] * k;
            a[i][j] += d;
        }
        for row in v.data.iter_mut() {
            let d = &row[i] * k;
            row[t] -= d;
        }
    };
    // Column op cols[j] += k*cols[t] on A corresponds to Q.row[t] -= k*Q.row[j].
    let col_add = |a: &mut Vec<Vec<BigInt>>, q: &mut IntMatrix, j: usize, t: usize, k: &BigInt| {
        for row in a.iter_mut() {
            let d = &row[t] * k;
            row[j] += d;
        }
        let rj = q.data[j].clone();
        for (x, y) in q.data[t].iter_mut().zip(rj) {
            *x -= y * k;
        }
    };

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                a.swap(pi, t);
                for row in v.data.iter_mut() {
                    row.swap(pi, t);
                }
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
                q.data.swap(pj, t);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let k = -a[i][t].div_floor(&p);
                    row_add(&mut a, &mut v, i, t, &k);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let k = -a[t][j].div_floor(&p);
                    col_add(&mut a, &mut q, j, t, &k);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => row_add(&mut a, &mut v, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for row in v.data.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
    }
    (v, IntMatrix { rows: r, cols: c, data: a }, q)
}
