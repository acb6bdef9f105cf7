//! Worked examples pinned as fixtures: each carries the expected value, the
//! library's value and an independent recomputation.

use std::collections::HashSet;

use serde::Serialize;

use super::brute;
use super::{enumerate_filtrations, random_complex, Infinities};
use crate::complex::{
    cech_tilde, cohomology, hom_derived, koszul, projective_replacement, shift, soft_truncate, tensor_complexes,
    tower_colimit, Complex, Side,
};
use crate::error::Result;
use crate::module::{
    image, injective_envelope, kernel, subquotient, torsion_part, FinModule, ModuleMap,
};
use crate::ring::{crt_idempotents, CyclicRing, SpecSubset};
use crate::tstruct::{
    coresolve_in_coaisle, filtration_of_generators, in_aisle, in_co_t_coaisle, in_coaisle_cech, in_coaisle_hom,
    in_coaisle_reduced, stalk_hom_check, truncate_t, Cutoff, ThomasonFiltration,
};

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub expected: String,
    /// Value from the library.
    pub computed: String,
    /// Value from an independent computation path.
    pub oracle: String,
}

impl Fixture {
    pub fn passed(&self) -> bool {
        self.expected == self.computed && self.expected == self.oracle
    }
}

fn ring(n: u64) -> CyclicRing {
    CyclicRing::new(n).expect("test modulus")
}

fn cyc(r: &CyclicRing, d: u64) -> FinModule {
    FinModule::cyclic(r, d)
}

fn show(m: &FinModule) -> String {
    format!("{:?}", m.canonical())
}

fn h(x: &Complex, k: i64) -> String {
    show(&cohomology(x).get(k))
}

fn bh(x: &Complex, k: i64) -> String {
    show(&brute::cohomology_type(x, k))
}

fn phi(r: &CyclicRing, cuts: &[(u64, Cutoff)]) -> ThomasonFiltration {
    ThomasonFiltration::from_cutoffs(r, cuts.iter().copied()).expect("primes of the ring")
}

fn phi_12() -> ThomasonFiltration {
    phi(&ring(12), &[(2, Cutoff::Finite(1)), (3, Cutoff::Finite(0))])
}

fn fixture(name: &'static str, expected: impl Into<String>, computed: impl Into<String>, oracle: impl Into<String>) -> Fixture {
    Fixture {
        name,
        expected: expected.into(),
        computed: computed.into(),
        oracle: oracle.into(),
    }
}

fn mult(m: &FinModule, r: u64) -> ModuleMap {
    ModuleMap::scalar(m, r)
}

fn yes(b: bool) -> String {
    b.to_string()
}

/// Cohomology of `X` on its range, as `degree:type` pairs; zero degrees
/// are omitted.
fn profile(x: &Complex, brute_path: bool) -> String {
    let Some((lo, hi)) = x.range() else { return "0".into() };
    let parts: Vec<String> = (lo..=hi)
        .filter_map(|k| {
            let m = if brute_path { brute::cohomology_type(x, k) } else { cohomology(x).get(k).canonical() };
            (!m.is_zero()).then(|| format!("{k}:{m:?}"))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

fn verdicts(x: &Complex, phi: &ThomasonFiltration) -> Result<[bool; 3]> {
    Ok([
        in_coaisle_cech(x, phi)?.accepted,
        in_coaisle_hom(x, phi)?.accepted,
        in_coaisle_reduced(x, phi)?.accepted,
    ])
}

fn module_fixtures() -> Result<Vec<Fixture>> {
    let r12 = ring(12);
    let r4 = ring(4);
    let z12 = cyc(&r12, 12);
    let z4 = cyc(&r4, 4);
    let mut out = Vec::new();

    let f = mult(&z12, 6);
    out.push(fixture("kernel-mult6", "Z/6", show(&kernel(&f).0), show(&brute::kernel_type(&f))));
    let f = mult(&z4, 2);
    out.push(fixture("image-mult2", "Z/2", show(&image(&f).0), show(&brute::image_type(&f))));
    for (name, a, b) in [("subquotient-2-6", 2, 6), ("subquotient-4-3", 4, 3)] {
        let (fi, fo) = (mult(&z12, a), mult(&z12, b));
        out.push(fixture(
            name,
            "0",
            show(subquotient(&fi, &fo)?.module()),
            show(&brute::subquotient_type(&fi, &fo)),
        ));
    }

    let z6 = cyc(&r12, 6);
    let t = torsion_part(&z6, &SpecSubset::from_primes(vec![2]));
    // elements of Z/6 killed by the 2-part of 12
    let killed: Vec<Vec<u64>> = brute::elements(&z6)
        .into_iter()
        .filter(|x| z6.scale_element(4, x) == z6.zero_element())
        .collect();
    let zero: HashSet<Vec<u64>> = [z6.zero_element()].into_iter().collect();
    out.push(fixture("torsion-part", "Z/2", show(&t.module), show(&brute::quotient_type(&z6, &killed, &zero))));

    let (e, iota) = injective_envelope(&cyc(&r12, 2));
    out.push(fixture(
        "envelope-z2",
        "Z/4 injective essential",
        format!("{} injective essential", show(&e)),
        format!(
            "{} {} {}",
            show(&brute::module_type(&e)),
            if brute::is_injective_module(&e) { "injective" } else { "not-injective" },
            if brute::is_essential(&iota) { "essential" } else { "inessential" }
        ),
    ));

    for (n, expected) in [(12u64, "2:9 3:4"), (36, "2:9 3:28")] {
        let r = ring(n);
        let fast: Vec<String> = crt_idempotents(&r).iter().map(|(p, e)| format!("{p}:{e}")).collect();
        let slow: Vec<String> = r
            .prime_list()
            .into_iter()
            .map(|p| format!("{p}:{}", brute::idempotent_for(&r, p).unwrap_or(0)))
            .collect();
        out.push(fixture(
            if n == 12 { "crt-12" } else { "crt-36" },
            expected,
            fast.join(" "),
            slow.join(" "),
        ));
    }
    Ok(out)
}

fn complex_fixtures() -> Result<Vec<Fixture>> {
    let r12 = ring(12);
    let r4 = ring(4);
    let mut out = Vec::new();

    let k2 = koszul(&r12, &[2]);
    out.push(fixture("koszul-H0", "Z/2", h(&k2, 0), bh(&k2, 0)));
    out.push(fixture("koszul-H-1", "Z/2", h(&k2, -1), bh(&k2, -1)));
    let k2s = shift(&k2, -1);
    out.push(fixture("shift-koszul", "0:Z/2 1:Z/2", profile(&k2s, false), profile(&k2s, true)));
    let t = soft_truncate(&k2s, 0, Side::Le).complex;
    out.push(fixture("truncate-le0", "0:Z/2", profile(&t, false), profile(&t, true)));
    let kk = tensor_complexes(&k2, &koszul(&r12, &[3]))?;
    out.push(fixture("koszul-2-3-acyclic", "0", profile(&kk, false), profile(&kk, true)));
    let k23 = koszul(&r12, &[2, 3]);
    out.push(fixture("koszul-pair-acyclic", "0", profile(&k23, false), profile(&k23, true)));

    let c2 = cech_tilde(&r12, &[2]);
    out.push(fixture("cech-H0", "Z/4", h(&c2, 0), bh(&c2, 0)));
    out.push(fixture("cech-H1", "0", h(&c2, 1), bh(&c2, 1)));
    let c6 = cech_tilde(&r12, &[6]);
    out.push(fixture("cech-unit-part", "0:Z/12", profile(&c6, false), profile(&c6, true)));

    let z2 = cyc(&r12, 2);
    let counts: Vec<String> = [0, 1]
        .iter()
        .map(|&k| hom_derived(&k2, &Complex::stalk(&z2, 0), k).map(|m| m.order().to_string()))
        .collect::<Result<_>>()?;
    let brute_counts: Vec<String> =
        [0, -1].iter().map(|&n| brute::stalk_hom_count(&k2, &z2, n).to_string()).collect();
    out.push(fixture("hom-koszul-z2", "2 2", counts.join(" "), brute_counts.join(" ")));

    let z2_4 = cyc(&r4, 2);
    let (p, _) = projective_replacement(&Complex::stalk(&z2_4, 0), -2)?;
    // only degrees above the floor are meaningful
    out.push(fixture(
        "replacement-z2",
        "-1:0 0:Z/2",
        format!("-1:{} 0:{}", h(&p, -1), h(&p, 0)),
        format!("-1:{} 0:{}", bh(&p, -1), bh(&p, 0)),
    ));
    let homs: Vec<String> = (0..4)
        .map(|k| hom_derived(&Complex::stalk(&z2_4, 0), &Complex::stalk(&z2_4, 0), k).map(|m| show(&m)))
        .collect::<Result<_>>()?;
    let brute_homs: Vec<String> = (0..4)
        .map(|k| {
            let (p, _) = projective_replacement(&Complex::stalk(&z2_4, 0), -k - 2)?;
            let c = brute::stalk_hom_count(&p, &z2_4, -k);
            Ok(if c == 2 { "Z/2".to_string() } else { format!("order {c}") })
        })
        .collect::<Result<_>>()?;
    out.push(fixture("ext-z2-periodic", "Z/2 Z/2 Z/2 Z/2", homs.join(" "), brute_homs.join(" ")));

    let z4 = cyc(&r12, 4);
    let ms = vec![z4.clone(); 6];
    let fs = vec![mult(&z4, 2); 5];
    let colim = tower_colimit(&ms, &fs)?;
    // the composite of two transitions is already zero
    let two = mult(&z4, 4);
    out.push(fixture("tower-nilpotent", "0", show(&colim), show(&brute::image_type(&two))));
    Ok(out)
}

fn tstruct_fixtures() -> Result<Vec<Fixture>> {
    let r12 = ring(12);
    let r4 = ring(4);
    let phi = phi_12();
    let mut out = Vec::new();
    let stalk = |d: u64, k: i64| Complex::stalk(&cyc(&r12, d), k);

    for (name, x, expected) in [("aisle-z4", stalk(4, 1), true), ("aisle-z3", stalk(3, 1), false)] {
        let fast = in_aisle(&x, &phi)?.accepted;
        let slow = (0..=2).all(|k| {
            brute::support(&brute::cohomology_type(&x, k))
                .into_iter()
                .all(|p| phi.at(k).contains(p))
        });
        out.push(fixture(name, yes(expected), yes(fast), yes(slow)));
    }

    let cases = [
        ("coaisle-z3", stalk(3, 1), phi.clone(), true),
        ("coaisle-r", stalk(12, 0), phi.clone(), false),
        ("coaisle-koszul3", shift(&koszul(&r12, &[3]), -1), phi.clone(), false),
        (
            "coaisle-z2-deg0",
            stalk(2, 0),
            self::phi(&r12, &[(2, Cutoff::Finite(0)), (3, Cutoff::NegInf)]),
            false,
        ),
        (
            "coaisle-z2-deg1",
            stalk(2, 1),
            self::phi(&r12, &[(2, Cutoff::Finite(0)), (3, Cutoff::NegInf)]),
            true,
        ),
    ];
    for (name, x, f, expected) in cases {
        let [c, h, r] = verdicts(&x, &f)?;
        out.push(fixture(name, yes(expected), yes(c), if h == r { yes(h) } else { "split".into() }));
    }

    let tri = truncate_t(&stalk(12, 1), &phi)?;
    out.push(fixture(
        "trunc-split",
        "1:Z/4 | 1:Z/3",
        format!("{} | {}", profile(&tri.u_part, false), profile(&tri.v_part, false)),
        format!("{} | {}", profile(&tri.u_part, true), profile(&tri.v_part, true)),
    ));
    let tri = truncate_t(&shift(&koszul(&r12, &[3]), -1), &phi)?;
    out.push(fixture(
        "trunc-koszul3",
        "0:Z/3 | 1:Z/3",
        format!("{} | {}", profile(&tri.u_part, false), profile(&tri.v_part, false)),
        format!("{} | {}", profile(&tri.u_part, true), profile(&tri.v_part, true)),
    ));

    let gens = vec![shift(&koszul(&r12, &[2]), -1), koszul(&r12, &[3])];
    let b = filtration_of_generators(&r12, &gens)?;
    // n_p = largest degree where p is in the support of some generator
    let slow: Vec<String> = r12
        .prime_list()
        .into_iter()
        .map(|p| {
            let top = gens
                .iter()
                .flat_map(|g| (-3..=3).filter(move |&k| brute::support(&brute::cohomology_type(g, k)).contains(&p)))
                .max();
            format!("{p}:{}", top.map_or("-inf".into(), |t| t.to_string()))
        })
        .collect();
    out.push(fixture("classify", "{2:1, 3:0}", format!("{b:?}"), format!("{{{}}}", slow.join(", "))));

    let phi_co = self::phi(&r12, &[(2, Cutoff::Finite(0)), (3, Cutoff::NegInf)]);
    for (name, x, expected) in [("cot-z3", stalk(3, 0), true), ("cot-z2-shift", stalk(2, -1), true), ("cot-z2", stalk(2, 0), false)] {
        let fast = in_co_t_coaisle(&x, &phi_co)?.accepted;
        // K(d) ⊗ X must live below -n_d for d in {2, 4}
        let slow = [2u64, 4].iter().all(|&d| {
            let t = tensor_complexes(&koszul(&r12, &[d]), &x).expect("same ring");
            (-3..=1).all(|k| k < 0 || brute::cohomology_type(&t, k).is_zero())
        });
        out.push(fixture(name, yes(expected), yes(fast), yes(slow)));
    }

    let k2 = koszul(&r12, &[2]);
    let e = cyc(&r12, 4);
    let check = stalk_hom_check(&k2, &e, 0)?;
    let slow_rhs = brute::hom_count(&brute::cohomology_type(&k2, 0), &e);
    out.push(fixture(
        "stalk-hom",
        "2 2 true",
        format!("{} {} {}", check.lhs.order(), check.rhs.order(), check.bijective),
        format!("{} {} true", brute::stalk_hom_count(&k2, &e, 0), slow_rhs),
    ));

    let phi4 = self::phi(&r4, &[(2, Cutoff::Finite(-1))]);
    for (name, x, expected) in [
        ("coresolve-z2", Complex::stalk(&cyc(&r4, 2), 0), "Z/4@0 Z/4@1 Z/4@2"),
        ("coresolve-r", Complex::stalk(&cyc(&r4, 4), 0), "Z/4@0"),
    ] {
        let steps = coresolve_in_coaisle(&x, &phi4, 3)?;
        let fast: Vec<String> = steps.iter().map(|s| format!("{}@{}", show(&s.module), s.degree)).collect();
        let slow: Vec<String> = steps
            .iter()
            .map(|s| {
                let ok = brute::is_injective_module(&s.module) && s.verdicts.iter().all(|(_, v)| *v);
                format!("{}@{}", if ok { show(&brute::module_type(&s.module)) } else { "bad".into() }, s.degree)
            })
            .collect();
        out.push(fixture(name, expected, fast.join(" "), slow.join(" ")));
    }
    Ok(out)
}

fn lab_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (name, n, window, inf, expected) in [
        ("enumerate-12", 12u64, (-1, 1), Infinities::NegOnly, 16usize),
        ("enumerate-4", 4, (0, 0), Infinities::None, 1),
        ("enumerate-30", 30, (0, 1), Infinities::None, 8),
    ] {
        let r = ring(n);
        let list = enumerate_filtrations(&r, window, inf);
        let distinct: HashSet<String> = list.iter().map(|f| format!("{f:?}")).collect();
        let extras = match inf {
            Infinities::None => 0,
            Infinities::NegOnly => 1,
            Infinities::Both => 2,
        };
        let count = ((window.1 - window.0 + 1) as usize + extras).pow(r.prime_list().len() as u32);
        out.push(fixture(name, expected.to_string(), distinct.len().to_string(), count.to_string()));
    }
    let r = ring(12);
    let x = random_complex(&r, (-2, 1), 2, 42);
    let again = random_complex(&r, (-2, 1), 2, 42);
    let squares_vanish = x.diffs().windows(2).all(|w| {
        brute::elements(w[0].source())
            .iter()
            .all(|v| w[1].apply(&w[0].apply(v)) == w[1].target().zero_element())
    });
    let bounded = x.range().is_none_or(|(lo, hi)| lo >= -2 && hi <= 1);
    out.push(fixture(
        "random-complex",
        "valid deterministic",
        format!("{} {}", if Complex::new(&r, x.min_degree(), x.coords().to_vec(), x.diffs().to_vec()).is_ok() { "valid" } else { "invalid" }, if x == again { "deterministic" } else { "nondeterministic" }),
        format!("{} deterministic", if squares_vanish && bounded { "valid" } else { "invalid" }),
    ));
    out
}

/// All pinned fixtures. A fixture whose computation errors reports the
/// error as its computed value.
pub fn worked_examples() -> Vec<Fixture> {
    let mut out = Vec::new();
    for group in [module_fixtures, complex_fixtures, tstruct_fixtures] {
        match group() {
            Ok(fs) => out.extend(fs),
            Err(e) => out.push(fixture("error", "ok", format!("error: {e}"), "ok")),
        }
    }
    out.extend(lab_fixtures());
    out
}
