//! Bounded cochain complexes of finite modules and the maps between them.

mod builders;
mod derived;
mod ops;

pub use builders::{cech_tilde, cech_triangle, koszul, CechTriangle};
pub use derived::{
    compact_dual, hom_derived, hom_derived_range, hom_derived_with_floor, projective_replacement,
    tower_colimit,
};
pub use ops::{
    brutal_truncate, cohomology, cohomology_at, cone, direct_sum_complexes, hom_complex, induced_map,
    shift, soft_truncate, tensor_chain_maps, tensor_complexes, Cone, DirectSum, HomComplex, Side,
    Truncation,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::module::{FinModule, ModuleMap};
use crate::ring::CyclicRing;

/// `… → X^k → X^{k+1} → …`, with coordinates from `min_degree` upward.
///
/// Zero coordinates at either end are trimmed, so the first and last stored
/// coordinates are nonzero; the zero complex stores nothing and has
/// `min_degree` 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    ring: CyclicRing,
    min_degree: i64,
    coords: Vec<FinModule>,
    diffs: Vec<ModuleMap>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (i, m) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{:?}@{}", m, self.min_degree + i as i64)?;
        }
        write!(f, "]")
    }
}

impl Complex {
    /// Validating constructor: `diffs[i] : coords[i] -> coords[i+1]` and
    /// consecutive differentials compose to zero.
    pub fn new(ring: &CyclicRing, min_degree: i64, coords: Vec<FinModule>, diffs: Vec<ModuleMap>) -> Result<Self> {
        let expected = coords.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(Error::Invalid(format!(
                "{} coordinates need {} differentials, got {}",
                coords.len(),
                expected,
                diffs.len()
            )));
        }
        for m in &coords {
            ring.check_same(m.ring())?;
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source() != &coords[i] || d.target() != &coords[i + 1] {
                return Err(Error::Invalid(format!(
                    "differential at degree {} does not match its coordinates",
                    min_degree + i as i64
                )));
            }
        }
        for (i, pair) in diffs.windows(2).enumerate() {
            if !pair[1].compose(&pair[0])?.is_zero() {
                return Err(Error::NotAComplex {
                    degree: min_degree + i as i64,
                });
            }
        }
        Ok(Self::trimmed(ring, min_degree, coords, diffs))
    }

    pub(crate) fn from_parts(ring: &CyclicRing, min_degree: i64, coords: Vec<FinModule>, diffs: Vec<ModuleMap>) -> Self {
        debug_assert_eq!(diffs.len(), coords.len().saturating_sub(1));
        debug_assert!(diffs
            .windows(2)
            .all(|p| p[1].compose(&p[0]).map(|c| c.is_zero()).unwrap_or(false)));
        Self::trimmed(ring, min_degree, coords, diffs)
    }

    fn trimmed(ring: &CyclicRing, mut min_degree: i64, mut coords: Vec<FinModule>, mut diffs: Vec<ModuleMap>) -> Self {
        let lead = coords.iter().take_while(|m| m.is_zero()).count();
        if lead == coords.len() {
            return Self::zero(ring);
        }
        let trail = coords.iter().rev().take_while(|m| m.is_zero()).count();
        coords.truncate(coords.len() - trail);
        diffs.truncate(coords.len() - 1);
        coords.drain(..lead);
        diffs.drain(..lead);
        min_degree += lead as i64;
        Complex {
            ring: ring.clone(),
            min_degree,
            coords,
            diffs,
        }
    }

    /// Build from a degree range and per-degree closures.
    pub(crate) fn from_fn(
        ring: &CyclicRing,
        lo: i64,
        hi: i64,
        coord: impl Fn(i64) -> FinModule,
        diff: impl Fn(i64, &FinModule, &FinModule) -> ModuleMap,
    ) -> Self {
        if hi < lo {
            return Self::zero(ring);
        }
        let coords: Vec<FinModule> = (lo..=hi).map(coord).collect();
        let diffs = (lo..hi)
            .map(|k| {
                let i = (k - lo) as usize;
                diff(k, &coords[i], &coords[i + 1])
            })
            .collect();
        Self::from_parts(ring, lo, coords, diffs)
    }

    pub fn zero(ring: &CyclicRing) -> Self {
        Complex {
            ring: ring.clone(),
            min_degree: 0,
            coords: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `M` concentrated in degree `degree`.
    pub fn stalk(m: &FinModule, degree: i64) -> Self {
        Self::trimmed(m.ring(), degree, vec![m.clone()], Vec::new())
    }

    pub fn ring(&self) -> &CyclicRing {
        &self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Lowest and highest nonzero coordinate, `None` for the zero complex.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.coords.is_empty() {
            None
        } else {
            Some((self.min_degree, self.min_degree + self.coords.len() as i64 - 1))
        }
    }

    pub fn coords(&self) -> &[FinModule] {
        &self.coords
    }

    pub fn diffs(&self) -> &[ModuleMap] {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.coords.iter().all(FinModule::is_free)
    }

    fn index(&self, k: i64) -> Option<usize> {
        let i = k.checked_sub(self.min_degree)?;
        (i >= 0 && (i as usize) < self.coords.len()).then_some(i as usize)
    }

    /// `X^k`, the zero module outside the stored range.
    pub fn coord(&self, k: i64) -> FinModule {
        match self.index(k) {
            Some(i) => self.coords[i].clone(),
            None => FinModule::zero(&self.ring),
        }
    }

    /// `d^k : X^k -> X^{k+1}`.
    pub fn diff(&self, k: i64) -> ModuleMap {
        match self.index(k) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => ModuleMap::zero(&self.coord(k), &self.coord(k + 1)),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        cohomology(self).is_zero()
    }
}

/// Degree-wise union of two optional ranges.
pub(crate) fn range_union(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (None, r) | (r, None) => r,
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
    }
}

/// A morphism of complexes, one module map per degree.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    components: Vec<ModuleMap>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("lo", &self.lo)
            .field("components", &self.components)
            .finish()
    }
}

impl ChainMap {
    /// Validating constructor; degrees missing from `components` are zero.
    pub fn new(source: &Complex, target: &Complex, components: BTreeMap<i64, ModuleMap>) -> Result<Self> {
        source.ring.check_same(&target.ring)?;
        let range = range_union(source.range(), target.range());
        for (&k, f) in &components {
            let inside = range.is_some_and(|(lo, hi)| lo <= k && k <= hi);
            if !inside && !f.is_zero() {
                return Err(Error::Invalid(format!("chain map component at degree {k} outside both complexes")));
            }
            if f.source() != &source.coord(k) || f.target() != &target.coord(k) {
                return Err(Error::Invalid(format!("chain map component at degree {k} has wrong endpoints")));
            }
        }
        let map = Self::build(source, target, |k| {
            components
                .get(&k)
                .cloned()
                .unwrap_or_else(|| ModuleMap::zero(&source.coord(k), &target.coord(k)))
        });
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn from_fn(source: &Complex, target: &Complex, f: impl Fn(i64) -> ModuleMap) -> Self {
        let map = Self::build(source, target, f);
        debug_assert!(map.validate().is_ok(), "not a chain map: {map:?}");
        map
    }

    fn build(source: &Complex, target: &Complex, f: impl Fn(i64) -> ModuleMap) -> Self {
        let (lo, components) = match range_union(source.range(), target.range()) {
            None => (0, Vec::new()),
            Some((lo, hi)) => (lo, (lo..=hi).map(f).collect()),
        };
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            lo,
            components,
        }
    }

    /// Commutation with the differentials in every degree.
    pub fn validate(&self) -> Result<()> {
        let Some((lo, hi)) = range_union(self.source.range(), self.target.range()) else {
            return Ok(());
        };
        for k in lo - 1..=hi {
            let left = self.target.diff(k).compose(&self.component(k))?;
            let right = self.component(k + 1).compose(&self.source.diff(k))?;
            if left != right {
                return Err(Error::NotAChainMap { degree: k });
            }
        }
        Ok(())
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Self::from_fn(source, target, |k| ModuleMap::zero(&source.coord(k), &target.coord(k)))
    }

    pub fn identity(x: &Complex) -> Self {
        Self::from_fn(x, x, |k| ModuleMap::identity(&x.coord(k)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, k: i64) -> ModuleMap {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.components.len() {
            self.components[i as usize].clone()
        } else {
            ModuleMap::zero(&self.source.coord(k), &self.target.coord(k))
        }
    }

    /// Nonzero components keyed by degree.
    pub fn components(&self) -> BTreeMap<i64, ModuleMap> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, f)| (self.lo + i as i64, f.clone()))
            .collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::Invalid("chain maps are not composable".into()));
        }
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = range_union(first.source.range(), self.target.range()) {
            for k in lo..=hi {
                comps.insert(k, self.component(k).compose(&first.component(k))?);
            }
        }
        Ok(Self::from_fn(&first.source, &self.target, |k| {
            comps
                .get(&k)
                .cloned()
                .unwrap_or_else(|| ModuleMap::zero(&first.source.coord(k), &self.target.coord(k)))
        }))
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Invalid("adding chain maps with different endpoints".into()));
        }
        let comps: Result<Vec<ModuleMap>> = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ChainMap {
            components: comps?,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            components: self.components.iter().map(ModuleMap::neg).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ModuleMap::is_zero)
    }

    /// `f[k]`, with components `f^{n+k}`.
    pub fn shift(&self, k: i64) -> ChainMap {
        let source = shift(&self.source, k);
        let target = shift(&self.target, k);
        Self::from_fn(&source, &target, |n| self.component(n + k))
    }

    /// Quasi-isomorphism witness: the cone is acyclic.
    pub fn is_quasi_iso(&self) -> bool {
        cone(self).complex.is_acyclic()
    }
}

/// A finitely supported family of modules indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    ring: CyclicRing,
    parts: BTreeMap<i64, FinModule>,
}

impl GradedModule {
    pub fn new(ring: &CyclicRing) -> Self {
        GradedModule {
            ring: ring.clone(),
            parts: BTreeMap::new(),
        }
    }

    /// Insert `m` at `degree`; zero modules are not stored.
    pub fn insert(&mut self, degree: i64, m: FinModule) {
        if m.is_zero() {
            self.parts.remove(&degree);
        } else {
            self.parts.insert(degree, m);
        }
    }

    pub fn get(&self, degree: i64) -> FinModule {
        self.parts
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| FinModule::zero(&self.ring))
    }

    pub fn ring(&self) -> &CyclicRing {
        &self.ring
    }

    pub fn parts(&self) -> &BTreeMap<i64, FinModule> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lowest degree with nonzero cohomology.
    pub fn inf(&self) -> Option<i64> {
        self.parts.keys().next().copied()
    }

    /// Highest degree with nonzero cohomology.
    pub fn sup(&self) -> Option<i64> {
        self.parts.keys().next_back().copied()
    }

    /// Equal up to isomorphism in every degree.
    pub fn is_isomorphic(&self, other: &GradedModule) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .all(|(k, m)| other.parts.get(k).is_some_and(|n| m.is_isomorphic(n)))
    }
}

#[cfg(test)]
mod tests;
