use std::fmt;

use crate::ring::{add_mod, mul_mod, neg_mod};

/// Dense row-major matrix over Z/n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZnMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for ZnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "] mod {}", self.modulus)
    }
}

impl std::ops::Index<(usize, usize)> for ZnMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZnMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

impl ZnMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        ZnMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u64, size: usize) -> Self {
        let mut m = Self::zeros(modulus, size, size);
        for i in 0..size {
            m[(i, i)] = 1 % modulus;
        }
        m
    }

    pub fn from_rows(modulus: u64, rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = Self::zeros(modulus, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = v % modulus;
            }
        }
        m
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(modulus: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(modulus, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v % modulus;
            }
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let n = self.modulus;
        let mut out = ZnMatrix::zeros(n, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = add_mod(out[(i, j)], mul_mod(a, b, n), n);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let n = self.modulus as u128;
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for (j, &x) in v.iter().enumerate() {
                    acc = (acc + self[(i, j)] as u128 * x as u128) % n;
                }
                acc as u64
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = ZnMatrix::zeros(self.modulus, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    // Elementary operations used by the normal-form routines.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// rows (a, b) <- T * rows (a, b) for T = [[p, q], [r, s]].
    pub(crate) fn mix_rows(&mut self, a: usize, b: usize, t: [u64; 4]) {
        let n = self.modulus;
        for j in 0..self.cols {
            let x = self[(a, j)];
            let y = self[(b, j)];
            self[(a, j)] = add_mod(mul_mod(t[0], x, n), mul_mod(t[1], y, n), n);
            self[(b, j)] = add_mod(mul_mod(t[2], x, n), mul_mod(t[3], y, n), n);
        }
    }

    /// cols (a, b) <- cols (a, b) * T for T = [[p, q], [r, s]].
    pub(crate) fn mix_cols(&mut self, a: usize, b: usize, t: [u64; 4]) {
        let n = self.modulus;
        for i in 0..self.rows {
            let x = self[(i, a)];
            let y = self[(i, b)];
            self[(i, a)] = add_mod(mul_mod(x, t[0], n), mul_mod(y, t[2], n), n);
            self[(i, b)] = add_mod(mul_mod(x, t[1], n), mul_mod(y, t[3], n), n);
        }
    }

    pub(crate) fn scale_row(&mut self, a: usize, u: u64) {
        let n = self.modulus;
        for j in 0..self.cols {
            self[(a, j)] = mul_mod(self[(a, j)], u, n);
        }
    }

    pub(crate) fn scale_col(&mut self, a: usize, u: u64) {
        let n = self.modulus;
        for i in 0..self.rows {
            self[(i, a)] = mul_mod(self[(i, a)], u, n);
        }
    }

    pub fn neg(&self) -> ZnMatrix {
        let n = self.modulus;
        ZnMatrix {
            modulus: n,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| neg_mod(x, n)).collect(),
        }
    }
}
