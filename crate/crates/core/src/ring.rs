//! The base ring Z/n, its spectrum, ideals, localizations and CRT idempotents.
//!
//! Ring elements are plain `u64` residues in `[0, n)`. Products go through
//! `u128`, and the modulus is capped below 2^62 so no intermediate can wrap.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub(crate) const MAX_MODULUS: u64 = 1 << 62;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended gcd over the integers: `(g, s, t)` with `g = s*a + t*b`, `g >= 0`.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = egcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn neg_mod(a: u64, m: u64) -> u64 {
    let a = a % m;
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub(crate) fn reduce_i128(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0 && p >= 2);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    modulus: u64,
    primes: Vec<(u64, u32)>,
}

/// The ring Z/n together with the factorization of n.
///
/// Cheap to clone; all values are immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicRing(Arc<RingData>);

impl fmt::Debug for CyclicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.modulus())
    }
}

impl fmt::Display for CyclicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.modulus())
    }
}

/// Build Z/n with its factored spectrum.
pub fn make_ring(n: u128) -> Result<CyclicRing> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n as u64));
    }
    if n >= MAX_MODULUS as u128 {
        return Err(Error::Overflow(n));
    }
    let n = n as u64;
    Ok(CyclicRing(Arc::new(RingData {
        modulus: n,
        primes: factorize(n),
    })))
}

impl CyclicRing {
    pub fn new(n: u64) -> Result<Self> {
        make_ring(n as u128)
    }

    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    /// Prime factorization `(p, e)` with primes ascending.
    pub fn primes(&self) -> &[(u64, u32)] {
        &self.0.primes
    }

    pub fn prime_list(&self) -> Vec<u64> {
        self.0.primes.iter().map(|&(p, _)| p).collect()
    }

    pub fn exponent(&self, p: u64) -> Option<u32> {
        self.0
            .primes
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
    }

    /// `p^{e_p}`, the order of the p-primary component of R.
    pub fn prime_power(&self, p: u64) -> Option<u64> {
        self.exponent(p).map(|e| p.pow(e))
    }

    pub fn spec(&self) -> SpecSubset {
        SpecSubset {
            primes: self.prime_list(),
        }
    }

    pub fn reduce(&self, x: i128) -> u64 {
        reduce_i128(x, self.modulus())
    }

    pub fn is_unit(&self, x: u64) -> bool {
        gcd(x % self.modulus(), self.modulus()) == 1
    }

    /// The canonical ideal `(gcd(x, n))`.
    pub fn ideal(&self, x: u64) -> Ideal {
        Ideal::new(self, x)
    }

    /// All positive divisors of n, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in self.primes() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for &d in &out {
                let mut q = d;
                for _ in 0..=e {
                    next.push(q);
                    q *= p;
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    /// Divisors `d != 1`; `d = n` stands for the zero ideal.
    pub fn nonunit_divisors(&self) -> Vec<u64> {
        self.divisors().into_iter().filter(|&d| d != 1).collect()
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.exponent(p).is_some()
    }

    pub(crate) fn check_same(&self, other: &CyclicRing) -> Result<()> {
        if self.modulus() == other.modulus() {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.modulus(),
                right: other.modulus(),
            })
        }
    }
}

/// An ideal of Z/n, stored by its canonical generator `gcd(lift, n)`.
///
/// The generator always divides n; `gen == n` is the zero ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    gen: u64,
}

impl Ideal {
    pub fn new(ring: &CyclicRing, lift: u64) -> Self {
        let n = ring.modulus();
        Ideal {
            gen: gcd(lift % n, n),
        }
    }

    pub fn generator(&self) -> u64 {
        self.gen
    }

    pub fn is_unit(&self) -> bool {
        self.gen == 1
    }

    pub fn product(&self, other: &Ideal, ring: &CyclicRing) -> Ideal {
        Ideal::new(ring, mul_mod(self.gen, other.gen, ring.modulus()))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal {
            gen: gcd(self.gen, other.gen),
        }
    }
}

/// A subset of Spec(Z/n), i.e. a set of prime divisors of n.
///
/// Every subset is Thomason here since the ring is artinian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SpecSubset {
    primes: Vec<u64>,
}

impl SpecSubset {
    pub fn empty() -> Self {
        SpecSubset { primes: Vec::new() }
    }

    /// Primes are sorted and deduplicated; membership in a ring is checked by
    /// [`SpecSubset::within`].
    pub fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        primes.dedup();
        SpecSubset { primes }
    }

    pub fn within(primes: Vec<u64>, ring: &CyclicRing) -> Result<Self> {
        if let Some(&p) = primes.iter().find(|&&p| !ring.contains_prime(p)) {
            return Err(Error::UnknownPrime(p));
        }
        Ok(Self::from_primes(primes))
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_subset(&self, other: &SpecSubset) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    pub fn union(&self, other: &SpecSubset) -> SpecSubset {
        let mut v = self.primes.clone();
        v.extend_from_slice(&other.primes);
        Self::from_primes(v)
    }

    pub fn intersection(&self, other: &SpecSubset) -> SpecSubset {
        SpecSubset {
            primes: self
                .primes
                .iter()
                .copied()
                .filter(|&p| other.contains(p))
                .collect(),
        }
    }
}

/// `V(I)`: the primes containing I, i.e. the primes dividing its generator.
pub fn v_set(ring: &CyclicRing, ideal: &Ideal) -> SpecSubset {
    SpecSubset {
        primes: ring
            .prime_list()
            .into_iter()
            .filter(|&p| ideal.generator() % p == 0)
            .collect(),
    }
}

/// The radical generator `prod_{p in P} p`, so that `V(d_P) = P`.
pub fn divisor_of_subset(ring: &CyclicRing, subset: &SpecSubset) -> Ideal {
    let d = subset.primes().iter().product::<u64>();
    Ideal::new(ring, d)
}

/// `R[x^{-1}]` for `R = Z/n`: the quotient `Z/m` with `m` the product of the
/// primary parts at primes not dividing `x`. `m == 1` is the zero ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    pub modulus: u64,
}

impl Localization {
    pub fn is_zero(&self) -> bool {
        self.modulus == 1
    }

    /// The canonical surjection `Z/n -> Z/m`.
    pub fn project(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn ring(&self) -> Option<CyclicRing> {
        CyclicRing::new(self.modulus).ok()
    }
}

pub fn localize_away(ring: &CyclicRing, x: u64) -> Localization {
    let x = x % ring.modulus();
    let m = ring
        .primes()
        .iter()
        .filter(|&&(p, _)| x % p != 0)
        .map(|&(p, e)| p.pow(e))
        .product();
    Localization { modulus: m }
}

/// CRT idempotents `e_p`: `e_p = 1 mod p^{e_p}`, `e_p = 0` at every other prime.
pub fn crt_idempotents(ring: &CyclicRing) -> BTreeMap<u64, u64> {
    let n = ring.modulus();
    ring.primes()
        .iter()
        .map(|&(p, e)| {
            let q = p.pow(e);
            let rest = n / q;
            // rest * inv(rest mod q) is 1 mod q and 0 mod rest
            let inv = mod_inv(rest % q, q).expect("coprime CRT components");
            (p, mul_mod(rest, inv, n))
        })
        .collect()
}

/// Sum of the idempotents of the primes in `subset`.
pub fn subset_idempotent(ring: &CyclicRing, subset: &SpecSubset) -> u64 {
    let n = ring.modulus();
    crt_idempotents(ring)
        .into_iter()
        .filter(|(p, _)| subset.contains(*p))
        .fold(0, |acc, (_, e)| add_mod(acc, e, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> CyclicRing {
        CyclicRing::new(n).unwrap()
    }

    #[test]
    fn make_ring_factors() {
        assert_eq!(z(12).primes(), &[(2, 2), (3, 1)]);
        assert_eq!(z(7).primes(), &[(7, 1)]);
        assert_eq!(make_ring(1), Err(Error::ModulusTooSmall(1)));
        assert_eq!(make_ring(0), Err(Error::ModulusTooSmall(0)));
        assert!(matches!(make_ring(1u128 << 70), Err(Error::Overflow(_))));
    }

    #[test]
    fn v_sets() {
        let r = z(12);
        assert_eq!(v_set(&r, &r.ideal(6)).primes(), &[2, 3]);
        assert!(v_set(&r, &r.ideal(1)).is_empty());
        assert_eq!(v_set(&r, &r.ideal(4)).primes(), &[2]);
        // the zero ideal
        assert_eq!(r.ideal(0).generator(), 12);
        assert_eq!(v_set(&r, &r.ideal(0)), r.spec());
        // 10 = 2*5 canonicalizes to (2)
        assert_eq!(r.ideal(10).generator(), 2);
    }

    #[test]
    fn divisor_of_subset_examples() {
        let r = z(12);
        assert_eq!(divisor_of_subset(&r, &r.spec()).generator(), 6);
        assert_eq!(divisor_of_subset(&r, &SpecSubset::empty()).generator(), 1);
        assert_eq!(
            divisor_of_subset(&r, &SpecSubset::from_primes(vec![2])).generator(),
            2
        );
    }

    #[test]
    fn localization_examples() {
        let r = z(12);
        let loc = localize_away(&r, 2);
        assert_eq!(loc.modulus, 3);
        // 2 acts invertibly on Z/3 and the kernel of the projection is the 2-primary part
        assert!(mod_inv(2, 3).is_some());
        let kernel: Vec<u64> = (0..12).filter(|&x| loc.project(x) == 0).collect();
        assert_eq!(kernel, vec![0, 3, 6, 9]);
        assert!(kernel.iter().all(|&x| (x * 4) % 12 == 0));
        assert_eq!(localize_away(&r, 1).modulus, 12);
        assert!(localize_away(&r, 6).is_zero());
        assert!(localize_away(&r, 0).is_zero());
    }

    #[test]
    fn idempotents() {
        let e = crt_idempotents(&z(12));
        assert_eq!(e[&2], 9);
        assert_eq!(e[&3], 4);
        assert_eq!(crt_idempotents(&z(7))[&7], 1);
        assert_eq!(crt_idempotents(&z(36))[&2], 9);
        assert_eq!(crt_idempotents(&z(36))[&3], 28);
    }

    #[test]
    fn divisors_listing() {
        assert_eq!(z(12).divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(z(30).nonunit_divisors().len(), 7);
        assert_eq!(z(36).nonunit_divisors().len(), 8);
    }

    #[test]
    fn egcd_identity() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, s, t) = egcd(a, b);
                assert_eq!(g, s * a + t * b);
                assert!(g >= 0);
            }
        }
    }
}
