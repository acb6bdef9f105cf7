//! Finitely generated Z/n-modules as sums of cyclic factors, and the maps
//! between them.

mod ops;
mod subquotient;

pub use ops::{
    cokernel, direct_sum, hom_module, image, injective_envelope, is_essential, is_injective,
    kernel, support, tensor_maps, tensor_modules, torsion_part, BlockMap, HomModule, TensorModule,
    TorsionPart,
};
pub use subquotient::{subquotient, Subquotient};
pub(crate) use ops::kernel_subquotient;
pub(crate) use subquotient::kernel_lattice;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::linalg::ZnMatrix;
use crate::ring::{gcd, valuation, CyclicRing};

/// `⊕_j Z/d_j` over `Z/n`, each `d_j | n`, `d_j >= 2`.
///
/// The factor list need not be sorted; [`FinModule::canonical`] gives the
/// invariant-factor form `d_1 | d_2 | ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinModule {
    ring: CyclicRing,
    factors: Vec<u64>,
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Display for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Invariant factors of `⊕ Z/d_j`, ascending by divisibility.
pub fn canonical_factors(factors: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &d in factors {
        for (p, _) in crate::ring::factorize(d) {
            by_prime.entry(p).or_default().push(valuation(d, p));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // largest exponents go to the last invariant factor
        for (k, e) in exps.into_iter().enumerate() {
            out[len - 1 - k] *= p.pow(e);
        }
    }
    out
}

impl FinModule {
    pub fn new(ring: &CyclicRing, factors: Vec<u64>) -> Result<Self> {
        let n = ring.modulus();
        for &d in &factors {
            if d < 2 || n % d != 0 {
                return Err(Error::InvalidFactor {
                    factor: d,
                    modulus: n,
                });
            }
        }
        Ok(FinModule {
            ring: ring.clone(),
            factors,
        })
    }

    /// Drops factors equal to 1; panics on factors not dividing n.
    pub(crate) fn from_factors(ring: &CyclicRing, factors: impl IntoIterator<Item = u64>) -> Self {
        let n = ring.modulus();
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        debug_assert!(factors.iter().all(|&d| d >= 2 && n % d == 0), "{factors:?} over Z/{n}");
        FinModule {
            ring: ring.clone(),
            factors,
        }
    }

    pub fn zero(ring: &CyclicRing) -> Self {
        FinModule {
            ring: ring.clone(),
            factors: Vec::new(),
        }
    }

    pub fn free(ring: &CyclicRing, rank: usize) -> Self {
        FinModule {
            ring: ring.clone(),
            factors: vec![ring.modulus(); rank],
        }
    }

    /// `R/(d) = Z/gcd(d, n)`; the zero module when that gcd is 1.
    pub fn cyclic(ring: &CyclicRing, d: u64) -> Self {
        let g = gcd(d % ring.modulus(), ring.modulus());
        Self::from_factors(ring, [g])
    }

    pub fn ring(&self) -> &CyclicRing {
        &self.ring
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|&d| d == self.ring.modulus())
    }

    pub fn canonical(&self) -> FinModule {
        FinModule {
            ring: self.ring.clone(),
            factors: canonical_factors(&self.factors),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.factors == canonical_factors(&self.factors)
    }

    /// Isomorphism of finite modules: equal invariant factors.
    pub fn is_isomorphic(&self, other: &FinModule) -> bool {
        self.ring == other.ring && canonical_factors(&self.factors) == canonical_factors(&other.factors)
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|&d| BigUint::from(d)).product()
    }

    /// Order as `u128`, `None` on overflow.
    pub fn order_u128(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.factors).map(|(&a, &d)| a % d).collect()
    }

    pub fn zero_element(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    pub fn basis_element(&self, j: usize) -> Vec<u64> {
        let mut v = self.zero_element();
        v[j] = 1;
        v
    }

    pub fn scale_element(&self, r: u64, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| crate::ring::mul_mod(a, r, d))
            .collect()
    }

    pub fn add_elements(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| crate::ring::add_mod(a, b, d))
            .collect()
    }
}

/// A homomorphism `source -> target`, represented by a matrix whose rows are
/// indexed by target factors and columns by source factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    source: FinModule,
    target: FinModule,
    matrix: ZnMatrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} : {:?}", self.source, self.target, self.matrix)
    }
}

impl ModuleMap {
    /// Validating constructor. Entries are reduced modulo their target
    /// factor, then checked for well-definedness: `e_i / gcd(e_i, d_j)`
    /// must divide `a_ij`.
    pub fn new(source: &FinModule, target: &FinModule, rows: &[Vec<u64>]) -> Result<Self> {
        source.ring.check_same(&target.ring)?;
        let (t, s) = (target.num_factors(), source.num_factors());
        let bad_shape = rows.len() != t || rows.iter().any(|r| r.len() != s);
        if bad_shape {
            return Err(Error::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                expected_rows: t,
                expected_cols: s,
            });
        }
        let n = source.ring.modulus();
        let mut matrix = ZnMatrix::zeros(n, t, s);
        for (i, row) in rows.iter().enumerate() {
            let e = target.factors[i];
            for (j, &a) in row.iter().enumerate() {
                let a = a % e;
                let required = e / gcd(e, source.factors[j]);
                if a % required != 0 {
                    return Err(Error::IllDefined {
                        row: i,
                        col: j,
                        value: a,
                        required,
                    });
                }
                matrix[(i, j)] = a;
            }
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// Trusted constructor for matrices produced by the library itself.
    pub(crate) fn from_matrix(source: &FinModule, target: &FinModule, mut matrix: ZnMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.num_factors());
        debug_assert_eq!(matrix.cols(), source.num_factors());
        for i in 0..matrix.rows() {
            let e = target.factors[i];
            for j in 0..matrix.cols() {
                let a = matrix[(i, j)] % e;
                debug_assert_eq!(a % (e / gcd(e, source.factors[j])), 0, "ill-defined entry ({i},{j})");
                matrix[(i, j)] = a;
            }
        }
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    /// Map sending the j-th source generator to `columns[j]`.
    pub(crate) fn from_columns(source: &FinModule, target: &FinModule, columns: &[Vec<u64>]) -> Self {
        let m = ZnMatrix::from_columns(source.ring.modulus(), target.num_factors(), columns);
        Self::from_matrix(source, target, m)
    }

    pub fn zero(source: &FinModule, target: &FinModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: ZnMatrix::zeros(source.ring.modulus(), target.num_factors(), source.num_factors()),
        }
    }

    pub fn identity(m: &FinModule) -> Self {
        Self::scalar(m, 1)
    }

    /// Multiplication by a ring element.
    pub fn scalar(m: &FinModule, r: u64) -> Self {
        let n = m.ring.modulus();
        let mut matrix = ZnMatrix::zeros(n, m.num_factors(), m.num_factors());
        for (i, &d) in m.factors.iter().enumerate() {
            matrix[(i, i)] = r % d;
        }
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    pub fn matrix(&self) -> &ZnMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.matrix.rows()).map(|i| self.matrix.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target != self.source {
            return Err(Error::Invalid(format!(
                "cannot compose {:?} after {:?}",
                self.source, first.target
            )));
        }
        Ok(ModuleMap::from_matrix(
            &first.source,
            &self.target,
            self.matrix.mul(&first.matrix),
        ))
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Invalid("adding maps with different endpoints".into()));
        }
        let n = self.matrix.modulus();
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = crate::ring::add_mod(m[(i, j)], other.matrix[(i, j)], n);
            }
        }
        Ok(ModuleMap::from_matrix(&self.source, &self.target, m))
    }

    pub fn scale(&self, r: u64) -> ModuleMap {
        let n = self.matrix.modulus();
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = crate::ring::mul_mod(m[(i, j)], r % n, n);
            }
        }
        ModuleMap::from_matrix(&self.source, &self.target, m)
    }

    pub fn neg(&self) -> ModuleMap {
        self.scale(self.matrix.modulus() - 1)
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).0.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> CyclicRing {
        CyclicRing::new(n).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_factors(&[4, 3]), vec![12]);
        assert_eq!(canonical_factors(&[2, 4, 3]), vec![2, 12]);
        assert_eq!(canonical_factors(&[6, 2]), vec![2, 6]);
        assert!(canonical_factors(&[]).is_empty());
    }

    #[test]
    fn validation() {
        let r = z(12);
        assert!(FinModule::new(&r, vec![5]).is_err());
        assert!(FinModule::new(&r, vec![1]).is_err());
        let z4 = FinModule::new(&r, vec![4]).unwrap();
        let z2 = FinModule::new(&r, vec![2]).unwrap();
        // Z/2 -> Z/4 must land in 2Z/4
        assert!(ModuleMap::new(&z2, &z4, &[vec![1]]).is_err());
        assert!(ModuleMap::new(&z2, &z4, &[vec![2]]).is_ok());
        assert!(ModuleMap::new(&z4, &z2, &[vec![1]]).is_ok());
        assert!(matches!(
            ModuleMap::new(&z4, &z2, &[vec![1, 1]]),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn composition_and_identity() {
        let r = z(12);
        let m = FinModule::new(&r, vec![4, 6]).unwrap();
        let id = ModuleMap::identity(&m);
        let f = ModuleMap::new(&m, &m, &[vec![1, 2], vec![3, 5]]).unwrap();
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }
}
