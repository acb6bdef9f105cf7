use tlab::lab::{
    enumerate_filtrations, random_complex, run_suite, worked_examples, Infinities, SuiteConfig,
};
use tlab::ring::CyclicRing;

fn ring(n: u64) -> CyclicRing {
    CyclicRing::new(n).unwrap()
}

#[test]
fn fixtures_pass() {
    let fixtures = worked_examples();
    let failed: Vec<_> = fixtures.iter().filter(|f| !f.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    for name in ["koszul-H0", "cech-H0", "trunc-split"] {
        assert!(fixtures.iter().any(|f| f.name == name), "{name}");
    }
}

#[test]
fn enumeration_counts() {
    let list = enumerate_filtrations(&ring(12), (-1, 1), Infinities::NegOnly);
    assert_eq!(list.len(), 16);
    let distinct: std::collections::HashSet<_> = list.iter().map(|f| format!("{f:?}")).collect();
    assert_eq!(distinct.len(), 16);
    assert_eq!(enumerate_filtrations(&ring(4), (0, 0), Infinities::None).len(), 1);
    assert_eq!(enumerate_filtrations(&ring(30), (0, 1), Infinities::None).len(), 8);
    assert_eq!(enumerate_filtrations(&ring(12), (0, 0), Infinities::Both).len(), 9);
}

#[test]
fn random_complex_edge_cases() {
    let r = ring(12);
    let x = random_complex(&r, (0, 0), 3, 7);
    assert!(x.diffs().is_empty());
    assert!(x.range().is_none_or(|(lo, hi)| lo == 0 && hi == 0));
    assert!(random_complex(&r, (-2, 1), 0, 7).is_zero());
    let a = random_complex(&r, (-2, 1), 2, 42);
    assert_eq!(a, random_complex(&r, (-2, 1), 2, 42));
}

fn small(props: &[&str]) -> SuiteConfig {
    SuiteConfig {
        rings: vec![12],
        complexes: 10,
        properties: Some(props.iter().map(|s| s.to_string()).collect()),
        ..SuiteConfig::default()
    }
}

#[test]
fn empty_selection_runs_nothing() {
    let report = run_suite(&small(&[])).unwrap();
    assert_eq!(report.counts.cases, 0);
    assert!(report.exhibits.is_empty());
}

#[test]
fn round_trip_case_count() {
    let mut config = small(&["round_trip"]);
    config.infinities = Infinities::None;
    let report = run_suite(&config).unwrap();
    assert_eq!(report.counts.cases, 25);
    assert_eq!(report.counts.failed, 0, "{:#?}", report.exhibits);
}

#[test]
fn report_is_reproducible() {
    let mut config = small(&["truncation", "oracle_agreement", "brute_modules"]);
    config.jobs = 1;
    let a = run_suite(&config).unwrap();
    config.jobs = 4;
    let b = run_suite(&config).unwrap();
    assert_eq!(a.without_time(), b.without_time());
    assert_eq!(a.counts.failed, 0, "{:#?}", a.exhibits);
}

#[test]
fn config_parsing() {
    let c = SuiteConfig::from_json_str(r#"{"schema": 1, "rings": [4], "seed": 9}"#).unwrap();
    assert_eq!(c.rings, vec![4]);
    assert_eq!(c.window, (-2, 2));
    let err = SuiteConfig::from_json_str(r#"{"schema": 2}"#).unwrap_err();
    assert!(err.to_string().contains("/schema"), "{err}");
    let err = SuiteConfig::from_json_str(r#"{"schema": 1, "properties": ["nope"]}"#).unwrap_err();
    assert!(err.to_string().contains("/properties/0"), "{err}");
    let err = SuiteConfig::from_json_str(r#"{"schema": 1, "rings": [1]}"#).unwrap_err();
    assert!(err.to_string().contains("modulus too small"), "{err}");
}

#[test]
fn every_property_small_run() {
    let config = SuiteConfig {
        rings: vec![4, 12, 30, 36],
        complexes: 6,
        ..SuiteConfig::default()
    };
    let report = run_suite(&config).unwrap();
    assert_eq!(report.counts.failed, 0, "{:#?}", report.exhibits);
    assert_eq!(report.counts.cases, report.counts.passed);
}
