//! Smith normal form of integer matrices with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSnf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl IntegerSnf {
    /// Diagonal entries `d_1 | d_2 | ...`, all non-negative.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn identity(size: usize) -> IntMatrix {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn row_combine(m: &mut IntMatrix, a: usize, b: usize, t: [&BigInt; 4]) {
    for j in 0..m[a].len() {
        let x = m[a][j].clone();
        let y = m[b][j].clone();
        m[a][j] = t[0] * &x + t[1] * &y;
        m[b][j] = t[2] * &x + t[3] * &y;
    }
}

fn col_combine(m: &mut IntMatrix, a: usize, b: usize, t: [&BigInt; 4]) {
    for row in m.iter_mut() {
        let x = row[a].clone();
        let y = row[b].clone();
        row[a] = &x * t[0] + &y * t[2];
        row[b] = &x * t[1] + &y * t[3];
    }
}

/// `(U, D, V)` with `U A V = D`, `U`, `V` unimodular and
/// `D` diagonal with `d_1 | d_2 | ...`, `d_i >= 0`.
pub fn smith_normal_form(a: &IntMatrix) -> IntegerSnf {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let one = BigInt::one();
    let zero = BigInt::zero();

    for t in 0..rows.min(cols) {
        // smallest nonzero absolute value as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| d[i][j].abs().cmp(&d[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for k in t + 1..rows {
                if d[k][t].is_zero() {
                    continue;
                }
                let (a0, b0) = (d[t][t].clone(), d[k][t].clone());
                if b0.is_multiple_of(&a0) {
                    let q = -(&b0 / &a0);
                    row_combine(&mut d, t, k, [&one, &zero, &q, &one]);
                    row_combine(&mut u, t, k, [&one, &zero, &q, &one]);
                } else {
                    let e = a0.extended_gcd(&b0);
                    let (ag, bg) = (&a0 / &e.gcd, -(&b0 / &e.gcd));
                    row_combine(&mut d, t, k, [&e.x, &e.y, &bg, &ag]);
                    row_combine(&mut u, t, k, [&e.x, &e.y, &bg, &ag]);
                }
            }
            for k in t + 1..cols {
                if d[t][k].is_zero() {
                    continue;
                }
                let (a0, b0) = (d[t][t].clone(), d[t][k].clone());
                if b0.is_multiple_of(&a0) {
                    let q = -(&b0 / &a0);
                    col_combine(&mut d, t, k, [&one, &q, &zero, &one]);
                    col_combine(&mut v, t, k, [&one, &q, &zero, &one]);
                } else {
                    let e = a0.extended_gcd(&b0);
                    let (ag, bg) = (&a0 / &e.gcd, -(&b0 / &e.gcd));
                    col_combine(&mut d, t, k, [&e.x, &bg, &e.y, &ag]);
                    col_combine(&mut v, t, k, [&e.x, &bg, &e.y, &ag]);
                    dirty = true;
                }
            }
            if dirty && (t + 1..rows).any(|k| !d[k][t].is_zero()) {
                continue;
            }
            if d[t][t].is_negative() {
                for x in d[t].iter_mut() {
                    *x = -&*x;
                }
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
            let p = d[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    row_combine(&mut d, t, i, [&one, &one, &zero, &one]);
                    row_combine(&mut u, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
    }
    IntegerSnf { u, d, v }
}
