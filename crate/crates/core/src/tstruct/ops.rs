use super::oracle::{CechOracle, HomOracle, MembershipOracle, OracleSide, ReducedOracle, SupportOracle, Verdict};
use super::{Cutoff, KoszulTensorOracle, OracleRegistry, ThomasonFiltration};
use crate::complex::{
    cech_tilde, cohomology, cohomology_at, cone, direct_sum_complexes, hom_complex, hom_derived, koszul, shift,
    soft_truncate, tensor_complexes, ChainMap, Complex, Side,
};
use crate::error::{Error, Result};
use crate::linalg::{LinearSolver, ZnMatrix};
use crate::module::{
    hom_module, injective_envelope, is_injective, kernel_subquotient, support, torsion_part, BlockMap, FinModule,
    ModuleMap,
};
use crate::ring::{divisor_of_subset, CyclicRing, SpecSubset};

/// `Γ_P X`: the summand of `X` supported in `P`, with inclusion and
/// retraction.
#[derive(Clone, Debug)]
pub struct TorsionComplex {
    pub complex: Complex,
    pub inclusion: ChainMap,
    pub retraction: ChainMap,
}

pub fn torsion_complex(x: &Complex, subset: &SpecSubset) -> TorsionComplex {
    let ring = x.ring();
    let parts = |k: i64| torsion_part(&x.coord(k), subset);
    let complex = match x.range() {
        None => Complex::zero(ring),
        Some((lo, hi)) => Complex::from_fn(
            ring,
            lo,
            hi,
            |k| parts(k).module,
            |k, _, _| {
                let d = x.diff(k).compose(&parts(k).inclusion).expect("composable");
                parts(k + 1).retraction.compose(&d).expect("composable")
            },
        ),
    };
    let inclusion = ChainMap::from_fn(&complex, x, |k| {
        ModuleMap::from_matrix(&complex.coord(k), &x.coord(k), parts(k).inclusion.matrix().clone())
    });
    let retraction = ChainMap::from_fn(x, &complex, |k| {
        ModuleMap::from_matrix(&x.coord(k), &complex.coord(k), parts(k).retraction.matrix().clone())
    });
    TorsionComplex {
        complex,
        inclusion,
        retraction,
    }
}

/// Per-degree comparison `Supp H^s(X) ⊆ Φ(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AisleReport {
    pub accepted: bool,
    pub degrees: Vec<(i64, SpecSubset, SpecSubset, bool)>,
}

pub fn in_aisle(x: &Complex, phi: &ThomasonFiltration) -> Result<AisleReport> {
    x.ring().check_same(phi.ring())?;
    let degrees: Vec<(i64, SpecSubset, SpecSubset, bool)> = cohomology(x)
        .parts()
        .iter()
        .map(|(&s, h)| {
            let supp = support(h);
            let allowed = phi.at(s);
            let ok = supp.is_subset(&allowed);
            (s, supp, allowed, ok)
        })
        .collect();
    Ok(AisleReport {
        accepted: degrees.iter().all(|d| d.3),
        degrees,
    })
}

pub fn in_coaisle_cech(x: &Complex, phi: &ThomasonFiltration) -> Result<Verdict> {
    CechOracle.check(x, phi)
}

pub fn in_coaisle_hom(x: &Complex, phi: &ThomasonFiltration) -> Result<Verdict> {
    HomOracle.check(x, phi)
}

pub fn in_coaisle_reduced(x: &Complex, phi: &ThomasonFiltration) -> Result<Verdict> {
    ReducedOracle.check(x, phi)
}

pub fn in_co_t_coaisle(x: &Complex, phi: &ThomasonFiltration) -> Result<Verdict> {
    KoszulTensorOracle.check(x, phi)
}

/// `{K(p)[-n_p] : n_p finite}`, ordered by prime.
pub fn generators_of(phi: &ThomasonFiltration) -> Result<Vec<Complex>> {
    let ring = phi.ring();
    let mut out = Vec::new();
    for (&p, &c) in phi.cutoffs() {
        match c {
            Cutoff::PosInf => return Err(Error::InfiniteCutoff(p)),
            Cutoff::NegInf => {}
            Cutoff::Finite(n) => out.push(shift(&koszul(ring, &[p]), -n)),
        }
    }
    Ok(out)
}

/// `n_p = max { i : p ∈ Supp H^i(S) for some S }`, `-∞` when never.
pub fn filtration_of_generators(ring: &CyclicRing, gens: &[Complex]) -> Result<ThomasonFiltration> {
    let mut cutoffs: Vec<(u64, Cutoff)> = ring.prime_list().into_iter().map(|p| (p, Cutoff::NegInf)).collect();
    for g in gens {
        ring.check_same(g.ring())?;
        for (&i, h) in cohomology(g).parts() {
            let supp = support(h);
            for (p, c) in cutoffs.iter_mut() {
                if supp.contains(*p) {
                    *c = (*c).max(Cutoff::Finite(i));
                }
            }
        }
    }
    ThomasonFiltration::from_cutoffs(ring, cutoffs)
}

/// Checks recorded while building a truncation triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub composite_zero: bool,
    /// The comparison `cone(u) -> V` has acyclic cone.
    pub cone_witness_acyclic: bool,
    pub aisle: Verdict,
    pub coaisle: Vec<(String, Verdict)>,
    /// `Hom_D(τ_U X, τ_V X) = 0`.
    pub hom_vanishes: bool,
    /// For constant `Φ ≡ P`: `τ_U X` and `Č~(d_P) ⊗ X` have the same
    /// cohomology.
    pub constant_agrees: Option<bool>,
}

impl Evidence {
    pub fn all_pass(&self) -> bool {
        self.composite_zero
            && self.cone_witness_acyclic
            && self.aisle.accepted
            && self.coaisle.iter().all(|(_, v)| v.accepted)
            && self.hom_vanishes
            && self.constant_agrees != Some(false)
    }
}

/// `τ_U X -> X -> τ_V X` with its verification evidence.
#[derive(Clone, Debug)]
pub struct TruncationTriangle {
    pub u_part: Complex,
    pub input: Complex,
    pub v_part: Complex,
    pub u_map: ChainMap,
    pub v_map: ChainMap,
    pub evidence: Evidence,
}

/// Truncation by primary components: `τ_U X = ⊕_p τ^{≤n_p} Γ_p X` and
/// `τ_V X = ⊕_p τ^{>n_p} Γ_p X`. The result is checked against the oracles
/// and any failed check is reported as a verification error.
pub fn truncate_t(x: &Complex, phi: &ThomasonFiltration) -> Result<TruncationTriangle> {
    x.ring().check_same(phi.ring())?;
    let ring = x.ring();
    let zero = Complex::zero(ring);
    let mut us = Vec::new();
    let mut vs = Vec::new();
    let mut u_maps = Vec::new();
    let mut v_maps = Vec::new();
    for p in ring.prime_list() {
        let tc = torsion_complex(x, &SpecSubset::from_primes(vec![p]));
        let gamma = &tc.complex;
        let (u, um, v, vm) = match phi.cutoff(p) {
            Cutoff::NegInf => (zero.clone(), ChainMap::zero(&zero, x), gamma.clone(), tc.retraction.clone()),
            Cutoff::PosInf => (gamma.clone(), tc.inclusion.clone(), zero.clone(), ChainMap::zero(x, &zero)),
            Cutoff::Finite(n) => {
                let le = soft_truncate(gamma, n, Side::Le);
                let gt = soft_truncate(gamma, n, Side::Gt);
                let um = tc.inclusion.compose(&le.map)?;
                let vm = gt.map.compose(&tc.retraction)?;
                (le.complex, um, gt.complex, vm)
            }
        };
        us.push(u);
        u_maps.push(um);
        vs.push(v);
        v_maps.push(vm);
    }
    let usum = direct_sum_complexes(ring, &us)?;
    let vsum = direct_sum_complexes(ring, &vs)?;
    let mut u_map = ChainMap::zero(&usum.complex, x);
    for (um, proj) in u_maps.iter().zip(&usum.projections) {
        u_map = u_map.add(&um.compose(proj)?)?;
    }
    let mut v_map = ChainMap::zero(x, &vsum.complex);
    for (vm, incl) in v_maps.iter().zip(&vsum.inclusions) {
        v_map = v_map.add(&incl.compose(vm)?)?;
    }
    let u_part = usum.complex;
    let v_part = vsum.complex;

    let composite_zero = v_map.compose(&u_map)?.is_zero();
    let c = cone(&u_map);
    let witness = ChainMap::new(
        &c.complex,
        &v_part,
        (c.complex.range().into_iter())
            .flat_map(|(lo, hi)| lo..=hi)
            .map(|k| {
                let mut b = BlockMap::new(ring, &[u_part.coord(k + 1), x.coord(k)], &[v_part.coord(k)]);
                b.add(0, 1, &v_map.component(k));
                (k, b.build())
            })
            .collect(),
    );
    let cone_witness_acyclic = match witness {
        Ok(w) => cone(&w).complex.is_acyclic(),
        Err(_) => false,
    };
    let aisle = SupportOracle.check(&u_part, phi)?;
    let registry = OracleRegistry::standard();
    let coaisle = registry
        .of_side(OracleSide::Coaisle)
        .map(|o| Ok((o.name().to_string(), o.check(&v_part, phi)?)))
        .collect::<Result<Vec<_>>>()?;
    let hom_vanishes = hom_derived(&u_part, &v_part, 0)?.is_zero();
    let constant_agrees = match phi.constant_value() {
        Some(p) => {
            let d = divisor_of_subset(ring, &p).generator();
            let gamma = tensor_complexes(&cech_tilde(ring, &[d]), x)?;
            Some(cohomology(&gamma).is_isomorphic(&cohomology(&u_part)))
        }
        None => None,
    };
    let evidence = Evidence {
        composite_zero,
        cone_witness_acyclic,
        aisle,
        coaisle,
        hom_vanishes,
        constant_agrees,
    };
    if !evidence.all_pass() {
        return Err(Error::Verification(format!(
            "truncation of {x:?} by {phi:?} failed its checks: {evidence:?}"
        )));
    }
    Ok(TruncationTriangle {
        u_part,
        input: x.clone(),
        v_part,
        u_map,
        v_map,
        evidence,
    })
}

/// `Hom_K(X, E[-n])` against `Hom_R(H^n(X), E)` through `f ↦ H^n(f)`.
#[derive(Clone, Debug)]
pub struct StalkHomCheck {
    pub lhs: FinModule,
    pub rhs: FinModule,
    pub map: ModuleMap,
    pub bijective: bool,
}

fn check_injective(e: &FinModule) -> Result<()> {
    if is_injective(e) {
        return Ok(());
    }
    let bad = e
        .factors()
        .iter()
        .copied()
        .find(|&d| !is_injective(&FinModule::cyclic(e.ring(), d)))
        .unwrap_or(0);
    Err(Error::NotInjective { factor: bad })
}

pub fn stalk_hom_check(x: &Complex, e: &FinModule, n: i64) -> Result<StalkHomCheck> {
    x.ring().check_same(e.ring())?;
    check_injective(e)?;
    let stalk = Complex::stalk(e, n);
    let hc = hom_complex(x, &stalk)?;
    let h0 = cohomology_at(&hc.complex, 0);
    let hn = cohomology_at(x, n);
    let hom = hom_module(hn.module(), e)?;
    let cols: Vec<Vec<u64>> = h0
        .generators()
        .iter()
        .map(|g| {
            let f = hc.chain_map_of(0, g).component(n);
            let images: Vec<Vec<u64>> = hn.generators().iter().map(|z| e.reduce(&f.apply(z))).collect();
            hom.element_of(&ModuleMap::from_columns(hn.module(), e, &images))
        })
        .collect();
    let map = ModuleMap::from_columns(h0.module(), &hom.module, &cols);
    let bijective = map.is_injective() && h0.module().order() == hom.module.order();
    Ok(StalkHomCheck {
        lhs: h0.module().clone(),
        rhs: hom.module.clone(),
        map,
        bijective,
    })
}

/// One rung of the coresolution: the stalk `E[-degree]` and the coaisle
/// verdicts for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoresolutionStep {
    pub module: FinModule,
    pub degree: i64,
    pub verdicts: Vec<(String, bool)>,
}

/// A chain map `X -> E[-k]` extending `Z^k -> H^k(X) -> E`.
fn extend_to_stalk(x: &Complex, k: i64, e: &FinModule, iota: &ModuleMap) -> Result<ChainMap> {
    let ring = x.ring();
    let n = ring.modulus();
    let xk = x.coord(k);
    let z = kernel_subquotient(&x.diff(k));
    let h = cohomology_at(x, k);
    let images: Vec<Vec<u64>> = z
        .generators()
        .iter()
        .map(|g| iota.apply(&h.project(g).expect("cycles project to cohomology")))
        .collect();
    let target_map = ModuleMap::from_columns(z.module(), e, &images);
    let hom_x = hom_module(&xk, e)?;
    let hom_z = hom_module(z.module(), e)?;
    let incl = z.generator_map();
    let restrict = hom_x.induced(&hom_z, |g| g.compose(&incl).expect("composable"));
    let rels = hom_z.module.num_factors();
    let mut diag = ZnMatrix::zeros(n, rels, rels);
    for (i, &d) in hom_z.module.factors().iter().enumerate() {
        diag[(i, i)] = d % n;
    }
    let system = restrict.matrix().hcat(&diag);
    let solution = LinearSolver::new(&system)
        .solve(&hom_z.element_of(&target_map))
        .ok_or_else(|| Error::Verification("injective module failed to extend a map".into()))?;
    let phi = hom_x.to_map(&solution[..hom_x.module.num_factors()]);
    let stalk = Complex::stalk(e, k);
    ChainMap::new(&x.clone(), &stalk, [(k, phi)].into_iter().collect())
}

/// Iterated injective envelopes: `E_i = E(H^{inf}(X_i))`,
/// `X_{i+1} = cone(X_i -> E_i[-k_i])[-1]`, for at most `depth` steps or
/// until the remainder is acyclic.
pub fn coresolve_in_coaisle(x: &Complex, phi: &ThomasonFiltration, depth: usize) -> Result<Vec<CoresolutionStep>> {
    let pre = in_coaisle_reduced(x, phi)?;
    if !pre.accepted {
        return Err(Error::NotInCoaisle(format!("{x:?} against {phi:?}: {:?}", pre.witness)));
    }
    let registry = OracleRegistry::standard();
    let mut cur = x.clone();
    let mut steps = Vec::new();
    for _ in 0..depth {
        let Some(k) = cohomology(&cur).inf() else { break };
        let h = cohomology_at(&cur, k);
        let (e, iota) = injective_envelope(h.module());
        let stalk = Complex::stalk(&e, k);
        let verdicts = registry
            .of_side(OracleSide::Coaisle)
            .map(|o| Ok((o.name().to_string(), o.check(&stalk, phi)?.accepted)))
            .collect::<Result<Vec<_>>>()?;
        let g = extend_to_stalk(&cur, k, &e, &iota)?;
        let next = shift(&cone(&g).complex, -1);
        if let Some(k2) = cohomology(&next).inf() {
            if k2 <= k {
                return Err(Error::Verification(format!(
                    "coresolution did not raise the cohomological infimum ({k} -> {k2})"
                )));
            }
        }
        steps.push(CoresolutionStep {
            module: e,
            degree: k,
            verdicts,
        });
        cur = next;
    }
    Ok(steps)
}
