use std::collections::BTreeSet;
use std::fmt;

use super::{torsion_complex, Cutoff, ThomasonFiltration};
use crate::complex::{
    cech_tilde, cohomology, compact_dual, hom_derived_range, koszul, soft_truncate, tensor_complexes, Complex,
    Side,
};
use crate::error::Result;
use crate::module::support;
use crate::ring::SpecSubset;

/// Which class an oracle decides membership in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleSide {
    Aisle,
    Coaisle,
    /// Coaisle of the co-t-structure attached to the filtration.
    CoTCoaisle,
}

impl fmt::Display for OracleSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleSide::Aisle => "aisle",
            OracleSide::Coaisle => "coaisle",
            OracleSide::CoTCoaisle => "co-t-coaisle",
        })
    }
}

/// What a profile entry is indexed by: a prime `p` (compared against `n_p`)
/// or a divisor `d` of `n` (compared against `n_d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Prime(u64),
    Divisor(u64),
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Prime(p) => write!(f, "p={p}"),
            Key::Divisor(d) => write!(f, "d={d}"),
        }
    }
}

impl Key {
    pub fn cutoff(self, phi: &ThomasonFiltration) -> Cutoff {
        match self {
            Key::Prime(p) => phi.cutoff(p),
            Key::Divisor(d) => phi.divisor_cutoff(d),
        }
    }
}

/// The filtration-independent part of an oracle's computation: for each
/// key, the degrees in which the tested object does not vanish.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Profile {
    pub entries: Vec<(Key, BTreeSet<i64>)>,
}

/// An oracle verdict with the first violating `(key, degree)` on rejection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub witness: Option<(Key, i64)>,
}

impl Verdict {
    pub fn accept() -> Self {
        Verdict {
            accepted: true,
            witness: None,
        }
    }

    pub fn reject(key: Key, degree: i64) -> Self {
        Verdict {
            accepted: false,
            witness: Some((key, degree)),
        }
    }
}

/// Whether nonvanishing in degree `s` is allowed against the cutoff `n`.
fn allowed(side: OracleSide, s: i64, n: Cutoff) -> bool {
    let s = Cutoff::Finite(s);
    match side {
        OracleSide::Aisle => s <= n,
        OracleSide::Coaisle => s > n,
        OracleSide::CoTCoaisle => s < n.neg(),
    }
}

/// Decide a profile against `Φ` by the rule of `side`.
pub fn decide_profile(side: OracleSide, profile: &Profile, phi: &ThomasonFiltration) -> Verdict {
    for (key, degrees) in &profile.entries {
        let n = key.cutoff(phi);
        if let Some(&s) = degrees.iter().find(|&&s| !allowed(side, s, n)) {
            return Verdict::reject(*key, s);
        }
    }
    Verdict::accept()
}

/// A membership test for one side of the t-structure (or co-t-structure)
/// attached to a filtration.
pub trait MembershipOracle: Send + Sync {
    fn name(&self) -> &'static str;

    fn side(&self) -> OracleSide;

    /// The criterion relies on the base ring being noetherian.
    fn noetherian_only(&self) -> bool {
        false
    }

    fn profile(&self, x: &Complex) -> Result<Profile>;

    fn decide(&self, profile: &Profile, phi: &ThomasonFiltration) -> Verdict {
        decide_profile(self.side(), profile, phi)
    }

    fn check(&self, x: &Complex, phi: &ThomasonFiltration) -> Result<Verdict> {
        x.ring().check_same(phi.ring())?;
        Ok(self.decide(&self.profile(x)?, phi))
    }
}

fn nonzero_degrees(x: &Complex) -> BTreeSet<i64> {
    cohomology(x).parts().keys().copied().collect()
}

/// Hom window `[inf(X) - 2, sup(X) + 1]` for a two-term source.
fn window(x: &Complex) -> Option<(i64, i64)> {
    x.range().map(|(a, b)| (a - 2, b + 1))
}

fn nonzero_homs(source: &Complex, x: &Complex) -> Result<BTreeSet<i64>> {
    let Some((lo, hi)) = window(x) else {
        return Ok(BTreeSet::new());
    };
    Ok(hom_derived_range(source, x, lo, hi)?
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(k, _)| k)
        .collect())
}

/// `Supp H^s(X) ⊆ Φ(s)` for every `s`.
pub struct SupportOracle;

impl MembershipOracle for SupportOracle {
    fn name(&self) -> &'static str {
        "support"
    }

    fn side(&self) -> OracleSide {
        OracleSide::Aisle
    }

    fn noetherian_only(&self) -> bool {
        true
    }

    fn profile(&self, x: &Complex) -> Result<Profile> {
        let h = cohomology(x);
        let entries = x
            .ring()
            .prime_list()
            .into_iter()
            .map(|p| {
                let degrees = h
                    .parts()
                    .iter()
                    .filter(|(_, m)| support(m).contains(p))
                    .map(|(&s, _)| s)
                    .collect();
                (Key::Prime(p), degrees)
            })
            .collect();
        Ok(Profile { entries })
    }
}

/// `Č~(d) ⊗ X ∈ D^{>n_d}` for every nonunit divisor `d`.
pub struct CechOracle;

impl MembershipOracle for CechOracle {
    fn name(&self) -> &'static str {
        "cech"
    }

    fn side(&self) -> OracleSide {
        OracleSide::Coaisle
    }

    fn profile(&self, x: &Complex) -> Result<Profile> {
        let ring = x.ring();
        let entries = ring
            .nonunit_divisors()
            .into_iter()
            .map(|d| Ok((Key::Divisor(d), nonzero_degrees(&tensor_complexes(&cech_tilde(ring, &[d]), x)?))))
            .collect::<Result<_>>()?;
        Ok(Profile { entries })
    }
}

/// `Hom_D(K(d), X[k]) = 0` for every nonunit divisor `d` and `k ≤ n_d`.
pub struct HomOracle;

impl MembershipOracle for HomOracle {
    fn name(&self) -> &'static str {
        "hom"
    }

    fn side(&self) -> OracleSide {
        OracleSide::Coaisle
    }

    fn profile(&self, x: &Complex) -> Result<Profile> {
        let ring = x.ring();
        let entries = ring
            .nonunit_divisors()
            .into_iter()
            .map(|d| Ok((Key::Divisor(d), nonzero_homs(&koszul(ring, &[d]), x)?)))
            .collect::<Result<_>>()?;
        Ok(Profile { entries })
    }
}

/// `Γ_p X ∈ D^{>n_p}` for every prime `p`, where `Γ_p X` is the `p`-primary
/// summand of `X`.
pub struct ReducedOracle;

impl MembershipOracle for ReducedOracle {
    fn name(&self) -> &'static str {
        "reduced"
    }

    fn side(&self) -> OracleSide {
        OracleSide::Coaisle
    }

    fn profile(&self, x: &Complex) -> Result<Profile> {
        let entries = x
            .ring()
            .prime_list()
            .into_iter()
            .map(|p| {
                let gamma = torsion_complex(x, &SpecSubset::from_primes(vec![p])).complex;
                (Key::Prime(p), nonzero_degrees(&gamma))
            })
            .collect();
        Ok(Profile { entries })
    }

    /// Direct form: `τ^{≤n_p} Γ_p X` acyclic for every prime.
    fn check(&self, x: &Complex, phi: &ThomasonFiltration) -> Result<Verdict> {
        x.ring().check_same(phi.ring())?;
        for p in x.ring().prime_list() {
            let gamma = torsion_complex(x, &SpecSubset::from_primes(vec![p])).complex;
            let low = match phi.cutoff(p) {
                Cutoff::NegInf => continue,
                Cutoff::PosInf => gamma,
                Cutoff::Finite(n) => soft_truncate(&gamma, n, Side::Le).complex,
            };
            if let Some(s) = cohomology(&low).inf() {
                return Ok(Verdict::reject(Key::Prime(p), s));
            }
        }
        Ok(Verdict::accept())
    }
}

/// `K(d) ⊗ X ∈ D^{<-n_d}` for every nonunit divisor `d`.
pub struct KoszulTensorOracle;

impl MembershipOracle for KoszulTensorOracle {
    fn name(&self) -> &'static str {
        "koszul-tensor"
    }

    fn side(&self) -> OracleSide {
        OracleSide::CoTCoaisle
    }

    fn profile(&self, x: &Complex) -> Result<Profile> {
        let ring = x.ring();
        let entries = ring
            .nonunit_divisors()
            .into_iter()
            .map(|d| Ok((Key::Divisor(d), nonzero_degrees(&tensor_complexes(&koszul(ring, &[d]), x)?))))
            .collect::<Result<_>>()?;
        Ok(Profile { entries })
    }
}

/// `Hom_D(K(d)*, X[j]) = 0` for `j ≥ -n_d`: the perpendicular class of the
/// compact duals of the generators.
pub struct DualHomOracle;

impl MembershipOracle for DualHomOracle {
    fn name(&self) -> &'static str {
        "dual-hom"
    }

    fn side(&self) -> OracleSide {
        OracleSide::CoTCoaisle
    }

    fn profile(&self, x: &Complex) -> Result<Profile> {
        let ring = x.ring();
        let entries = ring
            .nonunit_divisors()
            .into_iter()
            .map(|d| {
                let dual = compact_dual(&koszul(ring, &[d]))?;
                Ok((Key::Divisor(d), nonzero_homs(&dual, x)?))
            })
            .collect::<Result<_>>()?;
        Ok(Profile { entries })
    }
}

/// Named collection of oracles, looked up by name or side.
pub struct OracleRegistry {
    oracles: Vec<Box<dyn MembershipOracle>>,
}

impl Default for OracleRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl OracleRegistry {
    pub fn empty() -> Self {
        OracleRegistry { oracles: Vec::new() }
    }

    /// All built-in oracles.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(SupportOracle));
        r.register(Box::new(CechOracle));
        r.register(Box::new(HomOracle));
        r.register(Box::new(ReducedOracle));
        r.register(Box::new(KoszulTensorOracle));
        r.register(Box::new(DualHomOracle));
        r
    }

    /// Adds an oracle, replacing any previous one with the same name.
    pub fn register(&mut self, oracle: Box<dyn MembershipOracle>) {
        self.oracles.retain(|o| o.name() != oracle.name());
        self.oracles.push(oracle);
    }

    pub fn get(&self, name: &str) -> Option<&dyn MembershipOracle> {
        self.oracles.iter().find(|o| o.name() == name).map(|o| o.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.oracles.iter().map(|o| o.name()).collect()
    }

    pub fn of_side(&self, side: OracleSide) -> impl Iterator<Item = &dyn MembershipOracle> {
        self.oracles.iter().filter(move |o| o.side() == side).map(|o| o.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn MembershipOracle> {
        self.oracles.iter().map(|o| o.as_ref())
    }
}
