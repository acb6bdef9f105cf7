mod common;

use common::*;
use proptest::prelude::*;
use serde_json::json;
use tlab::json::{parse_ring, FromJson, ToJson};
use tlab::lab::{random_complex, random_filtration, Infinities};
use tlab::module::{FinModule, ModuleMap};
use tlab::ring::{CyclicRing, Ideal, SpecSubset};
use tlab::complex::Complex;
use tlab::tstruct::ThomasonFiltration;

fn round_trip<T: ToJson + FromJson + PartialEq + std::fmt::Debug>(r: &CyclicRing, x: &T) -> Result<(), TestCaseError> {
    let v = x.to_json();
    let text = serde_json::to_string(&v).unwrap();
    let back = T::from_json(r, &serde_json::from_str(&text).unwrap()).unwrap();
    prop_assert_eq!(&back, x);
    Ok(())
}

proptest! {
    #[test]
    fn rings(r in any_ring()) {
        prop_assert_eq!(parse_ring(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn subsets_and_ideals(r in any_ring(), mask in any::<u8>(), g in any::<u64>()) {
        let primes: Vec<u64> = r.prime_list().into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).collect();
        round_trip(&r, &SpecSubset::from_primes(primes))?;
        round_trip(&r, &Ideal::new(&r, g))?;
    }

    #[test]
    fn modules(m in any_ring().prop_flat_map(|r| module_in(&r, 4))) {
        round_trip(m.ring(), &m)?;
    }

    #[test]
    fn maps(f in any_map()) {
        round_trip(f.source().ring(), &f)?;
    }

    #[test]
    fn complexes(r in any_ring(), s in any::<u64>()) {
        round_trip(&r, &random_complex(&r, (-3, 2), 3, s))?;
    }

    #[test]
    fn filtrations(r in any_ring(), s in any::<u64>()) {
        round_trip(&r, &random_filtration(&r, (-3, 3), Infinities::Both, s))?;
    }
}

#[test]
fn error_pointers() {
    let r = ring(12);
    let bad_map = json!({"source": {"factors": [2]}, "target": {"factors": [4]}, "matrix": [[1]]});
    match ModuleMap::from_json(&r, &bad_map).unwrap_err() {
        tlab::Error::Parse { pointer, .. } => assert_eq!(pointer, "/matrix/0/0"),
        e => panic!("unexpected {e}"),
    }
    let bad_module = json!({"factors": [4, 5]});
    match FinModule::from_json(&r, &bad_module).unwrap_err() {
        tlab::Error::Parse { pointer, .. } => assert_eq!(pointer, "/factors/1"),
        e => panic!("unexpected {e}"),
    }
    assert!(Complex::from_json(&r, &json!({"min_degree": 0})).is_err());
    assert!(ThomasonFiltration::from_json(&r, &json!({"cutoffs": [{"prime": 5, "top": 0}]})).is_err());
    assert!(parse_ring(&json!({"modulus": 1})).is_err());
}
