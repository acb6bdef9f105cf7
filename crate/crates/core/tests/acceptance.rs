//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use tlab::complex::{cohomology, koszul};
use tlab::lab::{brute, run_suite, Infinities, SuiteConfig};
use tlab::module::{support, FinModule};
use tlab::ring::{v_set, CyclicRing};

const TEST_RINGS: [u64; 4] = [4, 12, 30, 36];
const AGREEMENT_RINGS: [u64; 3] = [4, 12, 30];

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(property: &str, rings: &[u64], corpus: usize, infinities: Infinities) -> Outcome {
    let config = SuiteConfig {
        rings: rings.to_vec(),
        window: (-2, 2),
        infinities,
        complexes: corpus,
        seed: 1,
        properties: Some(vec![property.to_string()]),
        jobs: 1,
        ..SuiteConfig::default()
    };
    match run_suite(&config) {
        Ok(r) => {
            let first = r.exhibits.first().map(|e| format!("; first failure: {} case {}: {}", e.modulus, e.case, e.verdict));
            Outcome {
                passed: r.counts.failed == 0 && r.counts.cases > 0,
                detail: format!("{} cases, {} failed{}", r.counts.cases, r.counts.failed, first.unwrap_or_default()),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: format!("suite error: {e}"),
        },
    }
}

fn koszul_h0() -> Outcome {
    let mut checked = 0;
    for n in TEST_RINGS {
        let r = CyclicRing::new(n).unwrap();
        for d in r.nonunit_divisors() {
            let k = koszul(&r, &[d]);
            let expected = FinModule::cyclic(&r, d).canonical();
            let h0 = cohomology(&k).get(0).canonical();
            if h0 != expected || brute::cohomology_type(&k, 0) != expected {
                return Outcome {
                    passed: false,
                    detail: format!("Z/{n}, d = {d}: H^0 = {h0:?}, expected {expected:?}"),
                };
            }
            checked += 1;
        }
    }
    Outcome {
        passed: true,
        detail: format!("{checked} divisors"),
    }
}

fn koszul_support() -> Outcome {
    let mut checked = 0;
    for n in TEST_RINGS {
        let r = CyclicRing::new(n).unwrap();
        for d in r.nonunit_divisors() {
            let v = v_set(&r, &r.ideal(d));
            for (k, h) in cohomology(&koszul(&r, &[d])).parts() {
                if !support(h).is_subset(&v) {
                    return Outcome {
                        passed: false,
                        detail: format!("Z/{n}, d = {d}: Supp H^{k} = {:?} not in {v:?}", support(h)),
                    };
                }
                checked += 1;
            }
        }
    }
    Outcome {
        passed: true,
        detail: format!("{checked} nonzero cohomology groups"),
    }
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "Koszul H^0 = R/(d)", Duration::from_secs(1), Box::new(koszul_h0)),
        (2, "Koszul support in V(d)", Duration::from_secs(1), Box::new(koszul_support)),
        (
            3,
            "coaisle oracle agreement",
            Duration::from_secs(300),
            Box::new(|| suite("oracle_agreement", &AGREEMENT_RINGS, 500, Infinities::NegOnly)),
        ),
        (
            4,
            "round trip B(A(phi)) = phi",
            Duration::from_secs(60),
            Box::new(|| suite("round_trip", &[12, 30], 0, Infinities::None)),
        ),
        (
            5,
            "generator filtration is minimal",
            Duration::from_secs(120),
            Box::new(|| suite("minimality", &TEST_RINGS, 0, Infinities::NegOnly)),
        ),
        (
            6,
            "generation identities",
            Duration::from_secs(10),
            Box::new(|| suite("generation", &TEST_RINGS, 0, Infinities::NegOnly)),
        ),
        (
            7,
            "truncation triangles verify",
            Duration::from_secs(300),
            Box::new(|| suite("truncation", &TEST_RINGS, 500, Infinities::NegOnly)),
        ),
        (
            8,
            "stalk Hom against injectives",
            Duration::from_secs(120),
            Box::new(|| suite("stalk_hom", &TEST_RINGS, 200, Infinities::NegOnly)),
        ),
        (
            9,
            "injective envelopes and coresolution",
            Duration::from_secs(180),
            Box::new(|| suite("injective_envelope", &TEST_RINGS, 200, Infinities::NegOnly)),
        ),
        (
            10,
            "Cech complex as Koszul-dual colimit",
            Duration::from_secs(60),
            Box::new(|| suite("cech_colimit", &[12], 100, Infinities::NegOnly)),
        ),
        (
            11,
            "co-t-structure duality",
            Duration::from_secs(180),
            Box::new(|| suite("co_t_duality", &AGREEMENT_RINGS, 500, Infinities::NegOnly)),
        ),
        (
            12,
            "free complexes preserve the aisle",
            Duration::from_secs(60),
            Box::new(|| suite("rigid", &TEST_RINGS, 100, Infinities::NegOnly)),
        ),
    ];
    let mut failures = 0;
    for (id, name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let passed = outcome.passed && in_time;
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {}: {name} ({}; {:.2}s of {}s{})",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
