//! Property families run by the suite, one trait object per family.

use serde_json::json;

use super::brute;
use super::fixtures::worked_examples;
use super::generate::{random_filtration, random_free_complex, random_map, random_module, rng};
use super::suite::{CaseResult, Failure, RingContext};
use crate::complex::{
    cech_tilde, cohomology, compact_dual, hom_derived, hom_derived_range, induced_map, koszul, tensor_chain_maps,
    tensor_complexes, tower_colimit, ChainMap, Complex,
};
use crate::error::Result;
use crate::json::ToJson;
use crate::module::{cokernel, hom_module, image, injective_envelope, is_essential, kernel, support, FinModule, ModuleMap};
use crate::ring::{v_set, CyclicRing};
use crate::tstruct::{
    coresolve_in_coaisle, filtration_of_generators, generators_of, in_aisle, truncate_t, CechOracle, Cutoff,
    DualHomOracle, HomOracle, KoszulTensorOracle, MembershipOracle, OracleRegistry, OracleSide, Profile,
    ReducedOracle, SupportOracle, ThomasonFiltration,
};

/// A family of checks, each case identified by its index for one ring.
pub trait Property: Send + Sync {
    fn name(&self) -> &'static str;

    fn cases(&self, ctx: &RingContext) -> usize;

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult;
}

/// Every built-in property, in report order.
pub fn standard_properties() -> Vec<Box<dyn Property>> {
    vec![
        Box::new(Fixtures),
        Box::new(KoszulH0),
        Box::new(KoszulSupport),
        Box::new(OracleAgreement),
        Box::new(RoundTrip),
        Box::new(Minimality),
        Box::new(Generation),
        Box::new(Truncation),
        Box::new(Orthogonality),
        Box::new(StalkHom),
        Box::new(InjectiveEnvelope),
        Box::new(CechColimit),
        Box::new(CoTDuality),
        Box::new(Rigid),
        Box::new(RandomValid),
        Box::new(BruteModules),
        Box::new(KunnethUnit),
    ]
}

fn err_on(x: &Complex, e: crate::Error) -> Failure {
    Failure::on_complex(x, format!("error: {e}"))
}

fn divisor_input(ring: &CyclicRing, d: u64) -> serde_json::Value {
    json!({ "modulus": ring.modulus(), "divisor": d })
}

fn finite_or_neg<'a>(ctx: &'a RingContext) -> Vec<&'a ThomasonFiltration> {
    ctx.filtrations
        .iter()
        .filter(|f| f.cutoffs().values().all(|&c| c != Cutoff::PosInf))
        .collect()
}

struct Fixtures;

impl Property for Fixtures {
    fn name(&self) -> &'static str {
        "fixtures"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        // ring independent, so run once
        if ctx.ring_index == 0 {
            worked_examples().len()
        } else {
            0
        }
    }

    fn check(&self, _ctx: &RingContext, case: usize) -> CaseResult {
        let f = &worked_examples()[case];
        if f.passed() {
            Ok(())
        } else {
            Err(Failure::new(json!({ "fixture": f.name }), format!("{f:?}")))
        }
    }
}

struct KoszulH0;

impl Property for KoszulH0 {
    fn name(&self) -> &'static str {
        "koszul_h0"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.ring.nonunit_divisors().len()
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let d = ctx.ring.nonunit_divisors()[case];
        let k = koszul(&ctx.ring, &[d]);
        let h0 = cohomology(&k).get(0).canonical();
        let expected = FinModule::cyclic(&ctx.ring, d).canonical();
        let oracle = brute::cohomology_type(&k, 0);
        if h0 == expected && oracle == expected {
            Ok(())
        } else {
            Err(Failure::new(
                divisor_input(&ctx.ring, d),
                format!("H^0 = {h0:?}, brute {oracle:?}, expected {expected:?}"),
            ))
        }
    }
}

struct KoszulSupport;

impl Property for KoszulSupport {
    fn name(&self) -> &'static str {
        "koszul_support"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.ring.nonunit_divisors().len()
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let d = ctx.ring.nonunit_divisors()[case];
        let v = v_set(&ctx.ring, &ctx.ring.ideal(d));
        let k = koszul(&ctx.ring, &[d]);
        for (&i, h) in cohomology(&k).parts() {
            let fast = support(h);
            let slow = brute::support(&brute::cohomology_type(&k, i));
            if !fast.is_subset(&v) || fast.primes() != slow.as_slice() {
                return Err(Failure::new(
                    divisor_input(&ctx.ring, d),
                    format!("Supp H^{i} = {fast:?} (brute {slow:?}) not inside V(d) = {v:?}"),
                ));
            }
        }
        Ok(())
    }
}

/// Decide one complex against every enumerated filtration with the
/// given oracles and report the first disagreement.
fn agreement(
    ctx: &RingContext,
    x: &Complex,
    oracles: &[&dyn MembershipOracle],
    direct: Option<&dyn MembershipOracle>,
) -> CaseResult {
    let profiles: Vec<Profile> = oracles
        .iter()
        .map(|o| o.profile(x))
        .collect::<Result<_>>()
        .map_err(|e| err_on(x, e))?;
    for phi in &ctx.filtrations {
        let mut verdicts: Vec<(&str, bool)> = oracles
            .iter()
            .zip(&profiles)
            .map(|(o, p)| (o.name(), o.decide(p, phi).accepted))
            .collect();
        if let Some(o) = direct {
            let v = o.check(x, phi).map_err(|e| err_on(x, e))?;
            verdicts.push(("direct", v.accepted));
        }
        if verdicts.iter().any(|v| v.1 != verdicts[0].1) {
            return Err(Failure::on_pair(x, phi, format!("oracles disagree: {verdicts:?}")));
        }
    }
    Ok(())
}

struct OracleAgreement;

impl Property for OracleAgreement {
    fn name(&self) -> &'static str {
        "oracle_agreement"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let x = ctx.corpus_complex(case);
        agreement(ctx, &x, &[&CechOracle, &HomOracle, &ReducedOracle], Some(&ReducedOracle))
    }
}

struct RoundTrip;

impl Property for RoundTrip {
    fn name(&self) -> &'static str {
        "round_trip"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        finite_or_neg(ctx).len()
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let phi = finite_or_neg(ctx)[case];
        let fail = |v: String| Failure::new(json!({ "filtration": phi.to_json() }), v);
        let gens = generators_of(phi).map_err(|e| fail(format!("error: {e}")))?;
        let back = filtration_of_generators(&ctx.ring, &gens).map_err(|e| fail(format!("error: {e}")))?;
        if &back == phi {
            Ok(())
        } else {
            Err(fail(format!("B(A(phi)) = {back:?}")))
        }
    }
}

struct Minimality;

impl Property for Minimality {
    fn name(&self) -> &'static str {
        "minimality"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        finite_or_neg(ctx).len()
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let phi = finite_or_neg(ctx)[case];
        let fail = |v: String| Failure::new(json!({ "filtration": phi.to_json() }), v);
        let gens = generators_of(phi).map_err(|e| fail(format!("error: {e}")))?;
        let profiles: Vec<Profile> = gens
            .iter()
            .map(|g| SupportOracle.profile(g))
            .collect::<Result<_>>()
            .map_err(|e| fail(format!("error: {e}")))?;
        for psi in &ctx.filtrations {
            let contains = profiles.iter().all(|p| SupportOracle.decide(p, psi).accepted);
            if contains != phi.is_below(psi) {
                return Err(fail(format!(
                    "aisle of {psi:?} contains generators: {contains}, phi below it: {}",
                    phi.is_below(psi)
                )));
            }
        }
        Ok(())
    }
}

struct Generation;

impl Property for Generation {
    fn name(&self) -> &'static str {
        "generation"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.ring.nonunit_divisors().len()
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let ring = &ctx.ring;
        let d = ring.nonunit_divisors()[case];
        let fail = |v: String| Failure::new(divisor_input(ring, d), v);
        let v = v_set(ring, &ring.ideal(d));
        let expected = ThomasonFiltration::from_cutoffs(ring, v.primes().iter().map(|&p| (p, Cutoff::Finite(0))))
            .map_err(|e| fail(format!("error: {e}")))?;
        let power = |k: u32| -> u64 { (1..k).fold(d, |acc, _| ((acc as u128 * d as u128) % ring.modulus() as u128) as u64) };
        let families: Vec<(&str, Complex)> = vec![
            ("K(d)", koszul(ring, &[d])),
            ("R/(d)", Complex::stalk(&FinModule::cyclic(ring, d), 0)),
            ("R/(d^2)", Complex::stalk(&FinModule::cyclic(ring, power(2)), 0)),
            ("R/(d^3)", Complex::stalk(&FinModule::cyclic(ring, power(3)), 0)),
        ];
        for (name, g) in families {
            let b = filtration_of_generators(ring, &[g]).map_err(|e| fail(format!("error: {e}")))?;
            if b != expected {
                return Err(fail(format!("{name} gives {b:?}, expected {expected:?}")));
            }
        }
        Ok(())
    }
}

fn random_pair(ctx: &RingContext, name: &str, case: usize) -> (Complex, ThomasonFiltration) {
    let x = ctx.corpus_complex(case);
    let phi = random_filtration(&ctx.ring, ctx.config.window, ctx.config.infinities, ctx.seed(name, case));
    (x, phi)
}

struct Truncation;

impl Property for Truncation {
    fn name(&self) -> &'static str {
        "truncation"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let (x, phi) = random_pair(ctx, self.name(), case);
        let t = truncate_t(&x, &phi).map_err(|e| Failure::on_pair(&x, &phi, format!("error: {e}")))?;
        if !t.evidence.all_pass() {
            return Err(Failure::on_pair(&x, &phi, format!("{:?}", t.evidence)));
        }
        let (hx, hu, hv) = (cohomology(&x), cohomology(&t.u_part), cohomology(&t.v_part));
        for (&k, m) in hx.parts() {
            if m.order() != hu.get(k).order() * hv.get(k).order() {
                return Err(Failure::on_pair(&x, &phi, format!("H^{k} does not split")));
            }
        }
        Ok(())
    }
}

struct Orthogonality;

impl Property for Orthogonality {
    fn name(&self) -> &'static str {
        "orthogonality"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let (x, phi) = random_pair(ctx, self.name(), case);
        let fail = |v: String| Failure::on_pair(&x, &phi, v);
        let t = truncate_t(&x, &phi).map_err(|e| fail(format!("error: {e}")))?;
        // the aisle is closed under positive shifts
        let homs = hom_derived_range(&t.u_part, &t.v_part, -3, 0).map_err(|e| fail(format!("error: {e}")))?;
        match homs.iter().find(|(_, m)| !m.is_zero()) {
            None => Ok(()),
            Some((k, m)) => Err(fail(format!("Hom(U, V[{k}]) = {m:?}"))),
        }
    }
}

struct StalkHom;

impl Property for StalkHom {
    fn name(&self) -> &'static str {
        "stalk_hom"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let x = ctx.corpus_complex(case);
        let Some((lo, hi)) = x.range() else { return Ok(()) };
        for &(p, _) in ctx.ring.primes() {
            let e = FinModule::cyclic(&ctx.ring, ctx.ring.prime_power(p).expect("prime of the ring"));
            for n in lo..=hi {
                let c = crate::tstruct::stalk_hom_check(&x, &e, n).map_err(|er| err_on(&x, er))?;
                let count = brute::stalk_hom_count(&x, &e, n);
                let rhs = brute::hom_count(&brute::cohomology_type(&x, n), &e);
                if !c.bijective || c.lhs.order() != count.into() || c.rhs.order() != rhs.into() {
                    return Err(Failure::on_complex(
                        &x,
                        format!(
                            "E = {e:?}, n = {n}: |lhs| = {} (brute {count}), |rhs| = {} (brute {rhs}), bijective {}",
                            c.lhs.order(),
                            c.rhs.order(),
                            c.bijective
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

struct InjectiveEnvelope;

impl Property for InjectiveEnvelope {
    fn name(&self) -> &'static str {
        "injective_envelope"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let (x, phi) = random_pair(ctx, self.name(), case);
        let fail = |v: String| Failure::on_pair(&x, &phi, v);
        let t = truncate_t(&x, &phi).map_err(|e| fail(format!("error: {e}")))?;
        let v = &t.v_part;
        let Some(k) = cohomology(v).inf() else { return Ok(()) };
        let (e, iota) = injective_envelope(&cohomology(v).get(k));
        if !is_essential(&iota) || !brute::is_essential(&iota) || !brute::is_injective_module(&e) {
            return Err(fail(format!("envelope {e:?} of H^{k}(V) is not an essential injective extension")));
        }
        let stalk = Complex::stalk(&e, k);
        let registry = OracleRegistry::standard();
        for o in registry.of_side(OracleSide::Coaisle) {
            let verdict = o.check(&stalk, &phi).map_err(|er| fail(format!("error: {er}")))?;
            if !verdict.accepted {
                return Err(fail(format!("{} rejects E[-{k}] = {e:?}", o.name())));
            }
        }
        let steps = coresolve_in_coaisle(v, &phi, 5).map_err(|er| fail(format!("coresolve error: {er}")))?;
        if let Some(s) = steps.iter().find(|s| s.verdicts.iter().any(|(_, ok)| !ok)) {
            return Err(fail(format!("coresolution stalk {:?}[-{}] rejected: {:?}", s.module, s.degree, s.verdicts)));
        }
        Ok(())
    }
}

/// `K(x^m)* -> K(x^{m+1})*`: identity in degree 0, multiplication by `x`
/// in degree 1.
fn dual_transition(ring: &CyclicRing, x: u64, m: u32) -> Result<(Complex, Complex, ChainMap)> {
    let pow = |k: u32| -> u64 { (0..k).fold(1 % ring.modulus(), |acc, _| ((acc as u128 * x as u128) % ring.modulus() as u128) as u64) };
    let a = compact_dual(&koszul(ring, &[pow(m)]))?;
    let b = compact_dual(&koszul(ring, &[pow(m + 1)]))?;
    let r = FinModule::free(ring, 1);
    let comps = [(0, ModuleMap::identity(&r)), (1, ModuleMap::scalar(&r, x))].into_iter().collect();
    let f = ChainMap::new(&a, &b, comps)?;
    Ok((a, b, f))
}

/// Number of tower terms used for each colimit.
const TOWER: u32 = 8;

fn colimit_check(ring: &CyclicRing, x: u64, cx: &Complex) -> Result<Option<String>> {
    let id = ChainMap::identity(cx);
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for m in 1..=TOWER {
        let (a, _, f) = dual_transition(ring, x, m)?;
        terms.push(tensor_complexes(&a, cx)?);
        if m < TOWER {
            maps.push(tensor_chain_maps(&f, &id)?);
        }
    }
    let cech = cohomology(&tensor_complexes(&cech_tilde(ring, &[x]), cx)?);
    let (lo, hi) = match cx.range() {
        Some((lo, hi)) => (lo, hi + 1),
        None => return Ok(None),
    };
    for i in lo..=hi {
        let fs: Vec<ModuleMap> = maps.iter().map(|f| induced_map(f, i)).collect();
        let mut ms: Vec<FinModule> = fs.iter().map(|f| f.source().clone()).collect();
        ms.push(fs.last().expect("tower has maps").target().clone());
        let colim = tower_colimit(&ms, &fs)?;
        if !colim.is_isomorphic(&cech.get(i)) {
            return Ok(Some(format!("x = {x}, degree {i}: colimit {colim:?} vs {:?}", cech.get(i))));
        }
    }
    Ok(None)
}

struct CechColimit;

impl CechColimit {
    /// Every element for small rings; a representative of each ideal
    /// otherwise.
    fn elements(ring: &CyclicRing) -> Vec<u64> {
        if ring.modulus() <= 12 {
            (0..ring.modulus()).collect()
        } else {
            ring.divisors().into_iter().map(|d| d % ring.modulus()).collect()
        }
    }
}

impl Property for CechColimit {
    fn name(&self) -> &'static str {
        "cech_colimit"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let cx = ctx.corpus_complex(case);
        for x in Self::elements(&ctx.ring) {
            match colimit_check(&ctx.ring, x, &cx) {
                Ok(None) => {}
                Ok(Some(msg)) => return Err(Failure::on_complex(&cx, msg)),
                Err(e) => return Err(Failure::on_complex(&cx, format!("x = {x}: error: {e}"))),
            }
        }
        Ok(())
    }
}

struct CoTDuality;

impl Property for CoTDuality {
    fn name(&self) -> &'static str {
        "co_t_duality"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let x = ctx.corpus_complex(case);
        agreement(ctx, &x, &[&KoszulTensorOracle, &DualHomOracle], None)
    }
}

struct Rigid;

impl Property for Rigid {
    fn name(&self) -> &'static str {
        "rigid"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let (y, phi) = random_pair(ctx, self.name(), case);
        let seed = ctx.seed("rigid-free", case);
        let x = random_free_complex(&ctx.ring, (ctx.config.degree_range.0.min(0), 0), ctx.config.max_factors, seed);
        let fail = |v: String| {
            Failure::new(json!({ "free": x.to_json(), "complex": y.to_json(), "filtration": phi.to_json() }), v)
        };
        let u = truncate_t(&y, &phi).map_err(|e| fail(format!("error: {e}")))?.u_part;
        let in_u = in_aisle(&u, &phi).map_err(|e| fail(format!("error: {e}")))?;
        if !in_u.accepted {
            return Err(fail("U-part not in the aisle".into()));
        }
        let t = tensor_complexes(&x, &u).map_err(|e| fail(format!("error: {e}")))?;
        let rep = in_aisle(&t, &phi).map_err(|e| fail(format!("error: {e}")))?;
        if rep.accepted {
            Ok(())
        } else {
            Err(fail(format!("tensor leaves the aisle: {:?}", rep.degrees)))
        }
    }
}

struct RandomValid;

impl Property for RandomValid {
    fn name(&self) -> &'static str {
        "random_valid"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let x = ctx.corpus_complex(case);
        let (a, b) = ctx.config.degree_range;
        let bounded = x.range().is_none_or(|(lo, hi)| lo >= a && hi <= b);
        let small = x.coords().iter().all(|m| m.num_factors() <= ctx.config.max_factors);
        let valid = Complex::new(&ctx.ring, x.min_degree(), x.coords().to_vec(), x.diffs().to_vec()).is_ok();
        let square_zero = x.diffs().windows(2).all(|w| w[1].compose(&w[0]).is_ok_and(|c| c.is_zero()));
        if bounded && small && valid && square_zero && x == ctx.corpus_complex(case) {
            Ok(())
        } else {
            Err(Failure::on_complex(
                &x,
                format!("bounded {bounded}, small {small}, valid {valid}, d^2 = 0 {square_zero}"),
            ))
        }
    }
}

struct BruteModules;

impl Property for BruteModules {
    fn name(&self) -> &'static str {
        "brute_modules"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let mut r = rng(ctx.seed(self.name(), case));
        let m = random_module(&ctx.ring, ctx.config.max_factors.max(1), &mut r);
        let n = random_module(&ctx.ring, ctx.config.max_factors.max(1), &mut r);
        let f = random_map(&m, &n, &mut r);
        let fail = |v: String| Failure::new(json!({ "map": f.to_json() }), v);
        let checks = [
            ("kernel", kernel(&f).0.canonical(), brute::kernel_type(&f)),
            ("image", image(&f).0.canonical(), brute::image_type(&f)),
            ("cokernel", cokernel(&f).0.canonical(), brute::quotient_type(&n, &brute::elements(&n), &brute::image_set(&f))),
        ];
        for (what, fast, slow) in checks {
            if fast != slow {
                return Err(fail(format!("{what}: {fast:?} vs brute {slow:?}")));
            }
        }
        let hom = hom_module(&m, &n).map_err(|e| fail(format!("error: {e}")))?;
        if hom.module.order() != brute::hom_count(&m, &n).into() {
            return Err(fail(format!("|Hom| = {} vs brute {}", hom.module.order(), brute::hom_count(&m, &n))));
        }
        let (e, iota) = injective_envelope(&m);
        if !brute::is_essential(&iota) || !brute::is_injective_module(&e) {
            return Err(fail(format!("envelope {e:?} fails the brute checks")));
        }
        Ok(())
    }
}

struct KunnethUnit;

impl Property for KunnethUnit {
    fn name(&self) -> &'static str {
        "kunneth_unit"
    }

    fn cases(&self, ctx: &RingContext) -> usize {
        ctx.config.corpus(self.name())
    }

    fn check(&self, ctx: &RingContext, case: usize) -> CaseResult {
        let x = ctx.corpus_complex(case);
        let unit = Complex::stalk(&FinModule::free(&ctx.ring, 1), 0);
        let t = tensor_complexes(&unit, &x).map_err(|e| err_on(&x, e))?;
        let hx = cohomology(&x);
        if !cohomology(&t).is_isomorphic(&hx) {
            return Err(Failure::on_complex(&x, "R ⊗ X and X differ in cohomology"));
        }
        let (a, b) = ctx.config.degree_range;
        for k in a..=b {
            let h = hom_derived(&unit, &x, k).map_err(|e| err_on(&x, e))?;
            if !h.is_isomorphic(&hx.get(k)) {
                return Err(Failure::on_complex(&x, format!("Hom(R, X[{k}]) = {h:?} but H^{k} = {:?}", hx.get(k))));
            }
        }
        Ok(())
    }
}
