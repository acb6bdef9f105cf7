use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{CyclicRing, SpecSubset};

/// A cutoff degree `n_p ∈ Z ∪ {-∞, +∞}`, ordered `-∞ < n < +∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cutoff {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Cutoff {
    pub fn neg(self) -> Cutoff {
        match self {
            Cutoff::NegInf => Cutoff::PosInf,
            Cutoff::Finite(n) => Cutoff::Finite(-n),
            Cutoff::PosInf => Cutoff::NegInf,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Cutoff::Finite(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::NegInf => write!(f, "-inf"),
            Cutoff::Finite(n) => write!(f, "{n}"),
            Cutoff::PosInf => write!(f, "+inf"),
        }
    }
}

/// `Φ(n) = {p : n ≤ n_p}`, stored as one cutoff per prime of the ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThomasonFiltration {
    ring: CyclicRing,
    cutoffs: BTreeMap<u64, Cutoff>,
}

impl fmt::Debug for ThomasonFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cutoffs.iter().map(|(p, c)| format!("{p}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for ThomasonFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Whether a filtration is bounded on either side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundednessKind {
    Bounded,
    BoundedBelow,
    BoundedAbove,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Boundedness {
    pub kind: BoundednessKind,
    pub is_intermediate: bool,
}

impl ThomasonFiltration {
    /// Primes missing from `cutoffs` get `-∞`.
    pub fn from_cutoffs(ring: &CyclicRing, cutoffs: impl IntoIterator<Item = (u64, Cutoff)>) -> Result<Self> {
        let mut map: BTreeMap<u64, Cutoff> = ring.prime_list().into_iter().map(|p| (p, Cutoff::NegInf)).collect();
        for (p, c) in cutoffs {
            match map.get_mut(&p) {
                Some(slot) => *slot = c,
                None => return Err(Error::UnknownPrime(p)),
            }
        }
        Ok(ThomasonFiltration {
            ring: ring.clone(),
            cutoffs: map,
        })
    }

    /// Jump form: `Φ(n) = below` for `n` before the first jump,
    /// `Φ(n) = S_i` from the i-th jump degree until the next, and
    /// `Φ(n) = above` after the last jump degree. Degrees must increase and
    /// the sets must decrease.
    pub fn from_jumps(
        ring: &CyclicRing,
        jumps: &[(i64, SpecSubset)],
        below: Option<SpecSubset>,
        above: Option<SpecSubset>,
    ) -> Result<Self> {
        let primes = ring.spec();
        for s in jumps.iter().map(|(_, s)| s).chain(below.iter()).chain(above.iter()) {
            if let Some(&p) = s.primes().iter().find(|&&p| !primes.contains(p)) {
                return Err(Error::UnknownPrime(p));
            }
        }
        let Some(first) = jumps.first() else {
            let constant = below.or(above).unwrap_or_else(SpecSubset::empty);
            return Self::from_cutoffs(ring, constant.primes().iter().map(|&p| (p, Cutoff::PosInf)));
        };
        let below = below.unwrap_or_else(|| first.1.clone());
        let above = above.unwrap_or_else(|| jumps.last().unwrap().1.clone());
        if !first.1.is_subset(&below) {
            return Err(Error::NotDecreasing { degree: first.0 });
        }
        for w in jumps.windows(2) {
            if w[1].0 <= w[0].0 || !w[1].1.is_subset(&w[0].1) {
                return Err(Error::NotDecreasing { degree: w[1].0 });
            }
        }
        let last = jumps.last().unwrap();
        if !above.is_subset(&last.1) {
            return Err(Error::NotDecreasing { degree: last.0 + 1 });
        }
        let cutoff = |p: u64| -> Cutoff {
            if above.contains(p) {
                return Cutoff::PosInf;
            }
            match jumps.iter().rposition(|(_, s)| s.contains(p)) {
                Some(i) if i + 1 < jumps.len() => Cutoff::Finite(jumps[i + 1].0 - 1),
                Some(_) => Cutoff::Finite(last.0),
                None if below.contains(p) => Cutoff::Finite(first.0 - 1),
                None => Cutoff::NegInf,
            }
        };
        Self::from_cutoffs(ring, ring.prime_list().into_iter().map(|p| (p, cutoff(p))))
    }

    /// `Φ ≡ P`.
    pub fn constant(ring: &CyclicRing, subset: &SpecSubset) -> Result<Self> {
        Self::from_jumps(ring, &[], Some(subset.clone()), None)
    }

    pub fn ring(&self) -> &CyclicRing {
        &self.ring
    }

    pub fn cutoffs(&self) -> &BTreeMap<u64, Cutoff> {
        &self.cutoffs
    }

    pub fn cutoff(&self, p: u64) -> Cutoff {
        self.cutoffs.get(&p).copied().unwrap_or(Cutoff::NegInf)
    }

    /// `Φ(n)`.
    pub fn at(&self, n: i64) -> SpecSubset {
        SpecSubset::from_primes(
            self.cutoffs
                .iter()
                .filter(|(_, &c)| Cutoff::Finite(n) <= c)
                .map(|(&p, _)| p)
                .collect(),
        )
    }

    /// `n_d = min { n_p : p ∈ V(d) }`; `+∞` for a unit.
    pub fn divisor_cutoff(&self, d: u64) -> Cutoff {
        self.cutoffs
            .iter()
            .filter(|(&p, _)| d % p == 0)
            .map(|(_, &c)| c)
            .min()
            .unwrap_or(Cutoff::PosInf)
    }

    /// The set `P` when `Φ ≡ P` is constant.
    pub fn constant_value(&self) -> Option<SpecSubset> {
        self.cutoffs
            .values()
            .all(|c| c.finite().is_none())
            .then(|| self.at(0))
    }

    /// Pointwise inclusion `Φ(n) ⊆ Ψ(n)` for all `n`.
    pub fn is_below(&self, other: &ThomasonFiltration) -> bool {
        self.cutoffs.iter().all(|(&p, &c)| c <= other.cutoff(p))
    }
}

/// Boundedness of `Φ`; intermediate exactly when bounded.
pub fn classify_boundedness(phi: &ThomasonFiltration) -> Boundedness {
    let below = phi.cutoffs.values().all(|&c| c != Cutoff::NegInf);
    let above = phi.cutoffs.values().all(|&c| c != Cutoff::PosInf);
    let kind = match (below, above) {
        (true, true) => BoundednessKind::Bounded,
        (true, false) => BoundednessKind::BoundedBelow,
        (false, true) => BoundednessKind::BoundedAbove,
        (false, false) => BoundednessKind::Neither,
    };
    Boundedness {
        kind,
        is_intermediate: kind == BoundednessKind::Bounded,
    }
}
