//! Smith normal form over the principal ideal ring Z/n.
//!
//! Z/n is an elementary divisor ring: every matrix `A` admits invertible
//! `U`, `V` over Z/n with `U A V` diagonal, the diagonal ideals forming a
//! divisibility chain. Entries are residues, so nothing grows during the
//! elimination.

use super::matrix::ZnMatrix;
use crate::ring::{egcd, gcd, mod_inv, mul_mod, reduce_i128};

#[derive(Clone, Debug)]
pub struct ResidueSnf {
    pub u: ZnMatrix,
    pub u_inv: ZnMatrix,
    pub v: ZnMatrix,
    pub v_inv: ZnMatrix,
    /// Diagonal ideal generators, each a divisor of n (`n` encodes the
    /// zero entry). Length `min(rows, cols)`, ascending by divisibility.
    pub diag: Vec<u64>,
}

impl ResidueSnf {
    pub fn modulus(&self) -> u64 {
        self.u.modulus()
    }

    /// Number of diagonal entries that are not the zero ideal.
    pub fn rank(&self) -> usize {
        let n = self.modulus();
        self.diag.iter().filter(|&&d| d != n).count()
    }

    /// The diagonal matrix `U A V` implied by `diag`.
    pub fn diagonal_matrix(&self) -> ZnMatrix {
        let n = self.modulus();
        let mut d = ZnMatrix::zeros(n, self.u.rows(), self.v.cols());
        for (i, &x) in self.diag.iter().enumerate() {
            d[(i, i)] = x % n;
        }
        d
    }
}

/// A unit `u` with `a = u * gcd(a, n) (mod n)`.
fn associate_unit(a: u64, n: u64) -> u64 {
    let g = gcd(a, n);
    if g == n {
        return 1 % n;
    }
    let m = n / g;
    let base = (a / g) % m;
    // units of Z/n surject onto units of Z/m; one of the d lifts is a unit
    for k in 0..g {
        let u = base + k * m;
        if gcd(u, n) == 1 {
            return u;
        }
    }
    unreachable!("no unit lift of {base} mod {m} in Z/{n}")
}

struct Calc {
    a: ZnMatrix,
    u: ZnMatrix,
    u_inv: ZnMatrix,
    v: ZnMatrix,
    v_inv: ZnMatrix,
}

impl Calc {
    fn n(&self) -> u64 {
        self.a.modulus()
    }

    fn row_op(&mut self, i: usize, k: usize, t: [u64; 4], t_inv: [u64; 4]) {
        self.a.mix_rows(i, k, t);
        self.u.mix_rows(i, k, t);
        self.u_inv.mix_cols(i, k, t_inv);
    }

    fn col_op(&mut self, j: usize, k: usize, t: [u64; 4], t_inv: [u64; 4]) {
        self.a.mix_cols(j, k, t);
        self.v.mix_cols(j, k, t);
        self.v_inv.mix_rows(j, k, t_inv);
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
        self.v_inv.swap_rows(j, k);
    }

    /// Zero out `a[k][t]` using the pivot `a[t][t]`.
    fn clear_below(&mut self, t: usize, k: usize) {
        let n = self.n();
        let a = self.a[(t, t)];
        let b = self.a[(k, t)];
        if a != 0 && b % a == 0 {
            let q = (b / a) % n;
            self.row_op(t, k, [1, 0, reduce_i128(-(q as i128), n), 1], [1, 0, q, 1]);
            return;
        }
        let (g, s, r) = egcd(a as i128, b as i128);
        let (ag, bg) = (a as i128 / g, b as i128 / g);
        let t_mat = [
            reduce_i128(s, n),
            reduce_i128(r, n),
            reduce_i128(-bg, n),
            reduce_i128(ag, n),
        ];
        let t_inv = [
            reduce_i128(ag, n),
            reduce_i128(-r, n),
            reduce_i128(bg, n),
            reduce_i128(s, n),
        ];
        self.row_op(t, k, t_mat, t_inv);
    }

    /// Zero out `a[t][k]` using the pivot `a[t][t]`.
    fn clear_right(&mut self, t: usize, k: usize) {
        let n = self.n();
        let a = self.a[(t, t)];
        let b = self.a[(t, k)];
        if a != 0 && b % a == 0 {
            let q = (b / a) % n;
            self.col_op(t, k, [1, reduce_i128(-(q as i128), n), 0, 1], [1, q, 0, 1]);
            return;
        }
        let (g, s, r) = egcd(a as i128, b as i128);
        let (ag, bg) = (a as i128 / g, b as i128 / g);
        let t_mat = [
            reduce_i128(s, n),
            reduce_i128(-bg, n),
            reduce_i128(r, n),
            reduce_i128(ag, n),
        ];
        let t_inv = [
            reduce_i128(ag, n),
            reduce_i128(bg, n),
            reduce_i128(-r, n),
            reduce_i128(s, n),
        ];
        self.col_op(t, k, t_mat, t_inv);
    }

    fn pivot_search(&self, t: usize) -> Option<(usize, usize)> {
        let n = self.n();
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)];
                if x == 0 {
                    continue;
                }
                let g = gcd(x, n);
                if best.is_none_or(|(bg, _, _)| g < bg) {
                    best = Some((g, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> Vec<u64> {
        let n = self.n();
        let (m, c) = (self.a.rows(), self.a.cols());
        let steps = m.min(c);
        let mut diag = Vec::with_capacity(steps);
        for t in 0..steps {
            let Some((pi, pj)) = self.pivot_search(t) else {
                diag.extend(std::iter::repeat_n(n, steps - t));
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                loop {
                    for k in t + 1..m {
                        if self.a[(k, t)] != 0 {
                            self.clear_below(t, k);
                        }
                    }
                    for k in t + 1..c {
                        if self.a[(t, k)] != 0 {
                            self.clear_right(t, k);
                        }
                    }
                    if (t + 1..m).all(|k| self.a[(k, t)] == 0) {
                        break;
                    }
                }
                // normalize the pivot to its canonical divisor
                let p = self.a[(t, t)];
                let d = gcd(p, n);
                let unit = associate_unit(p, n);
                let inv = mod_inv(unit, n).expect("associate is a unit");
                self.a.scale_row(t, inv);
                self.u.scale_row(t, inv);
                self.u_inv.scale_col(t, unit);
                debug_assert_eq!(self.a[(t, t)], d % n);
                // enforce divisibility of the remaining block
                let offender = (t + 1..m)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| self.a[(i, j)] % d != 0);
                match offender {
                    Some((i, _)) => self.row_op(t, i, [1, 1, 0, 1], [1, n - 1, 0, 1]),
                    None => {
                        diag.push(d);
                        break;
                    }
                }
            }
        }
        diag
    }
}

pub fn residue_snf(a: &ZnMatrix) -> ResidueSnf {
    let n = a.modulus();
    let mut calc = Calc {
        a: a.clone(),
        u: ZnMatrix::identity(n, a.rows()),
        u_inv: ZnMatrix::identity(n, a.rows()),
        v: ZnMatrix::identity(n, a.cols()),
        v_inv: ZnMatrix::identity(n, a.cols()),
    };
    let diag = calc.run();
    debug_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
    ResidueSnf {
        u: calc.u,
        u_inv: calc.u_inv,
        v: calc.v,
        v_inv: calc.v_inv,
        diag,
    }
}

/// Solutions of `A x = 0` over Z/n, as a generating set of column vectors.
pub fn kernel_generators(a: &ZnMatrix) -> Vec<Vec<u64>> {
    let n = a.modulus();
    let snf = residue_snf(a);
    let mut gens = Vec::new();
    for j in 0..a.cols() {
        let scale = match snf.diag.get(j) {
            Some(&1) => continue,
            Some(&d) => n / d,
            None => 1,
        };
        let col: Vec<u64> = snf
            .v
            .column(j)
            .into_iter()
            .map(|x| mul_mod(x, scale, n))
            .collect();
        if col.iter().any(|&x| x != 0) {
            gens.push(col);
        }
    }
    gens
}

/// Precomputed solver for `A x = b` over Z/n.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    snf: ResidueSnf,
    cols: usize,
}

impl LinearSolver {
    pub fn new(a: &ZnMatrix) -> Self {
        LinearSolver {
            snf: residue_snf(a),
            cols: a.cols(),
        }
    }

    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let n = self.snf.modulus();
        let y = self.snf.u.mul_vec(b);
        let mut w = vec![0u64; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            match self.snf.diag.get(i) {
                Some(&d) => {
                    if yi % d != 0 {
                        return None;
                    }
                    // d = n forces yi = 0 and w_i = 0
                    w[i] = if d == n { 0 } else { yi / d };
                }
                None => {
                    if yi != 0 {
                        return None;
                    }
                }
            }
        }
        Some(self.snf.v.mul_vec(&w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &ZnMatrix) -> ResidueSnf {
        let s = residue_snf(a);
        let n = a.modulus();
        assert_eq!(s.u.mul(a).mul(&s.v), s.diagonal_matrix(), "U A V = D for {a:?}");
        assert_eq!(s.u.mul(&s.u_inv), ZnMatrix::identity(n, a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), ZnMatrix::identity(n, a.cols()));
        assert!(s.diag.windows(2).all(|w| w[1] % w[0] == 0));
        assert!(s.diag.iter().all(|&d| n % d == 0));
        s
    }

    #[test]
    fn small_cases() {
        let a = ZnMatrix::from_rows(12, &[vec![4, 6], vec![6, 4]], 2);
        assert_eq!(check(&a).diag, vec![2, 2]);
        let a = ZnMatrix::from_rows(12, &[vec![8]], 1);
        assert_eq!(check(&a).diag, vec![4]);
        let a = ZnMatrix::from_rows(12, &[vec![0, 0, 0]], 3);
        assert_eq!(check(&a).diag, vec![12]);
    }

    #[test]
    fn exhaustive_2x2_mod_12() {
        for x in 0..12u64.pow(4) {
            let e = [x % 12, (x / 12) % 12, (x / 144) % 12, (x / 1728) % 12];
            let a = ZnMatrix::from_rows(12, &[vec![e[0], e[1]], vec![e[2], e[3]]], 2);
            check(&a);
        }
    }

    #[test]
    fn kernel_and_solve() {
        let a = ZnMatrix::from_rows(12, &[vec![6]], 1);
        let gens = kernel_generators(&a);
        assert_eq!(gens, vec![vec![2]]);
        let solver = LinearSolver::new(&ZnMatrix::from_rows(12, &[vec![4, 6]], 2));
        let x = solver.solve(&[2]).unwrap();
        assert_eq!((4 * x[0] + 6 * x[1]) % 12, 2);
        assert!(solver.solve(&[1]).is_none());
    }
}
