mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use tlab::complex::{cohomology, Complex};
use tlab::lab::{brute, random_complex, random_filtration, Infinities};
use tlab::module::FinModule;
use tlab::tstruct::{
    filtration_of_generators, generators_of, in_aisle, truncate_t, Cutoff, OracleRegistry, OracleSide,
    ThomasonFiltration,
};

fn case(inf: Infinities) -> impl Strategy<Value = (Complex, ThomasonFiltration)> {
    (any_ring(), any::<u64>(), any::<u64>()).prop_map(move |(r, a, b)| {
        (random_complex(&r, (-2, 1), 2, a), random_filtration(&r, (-2, 2), inf, b))
    })
}

fn degrees(x: &Complex) -> Vec<i64> {
    x.range().map_or(vec![], |(lo, hi)| (lo..=hi).collect())
}

/// Enumerated cohomology supports compared against the cutoffs.
fn brute_member(x: &Complex, phi: &ThomasonFiltration, aisle: bool) -> bool {
    degrees(x).into_iter().all(|s| {
        brute::support(&brute::cohomology_type(x, s))
            .into_iter()
            .all(|p| (Cutoff::Finite(s) <= phi.cutoff(p)) == aisle)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn oracles_match_enumeration((x, phi) in case(Infinities::Both)) {
        let reg = OracleRegistry::standard();
        let aisle = brute_member(&x, &phi, true);
        let coaisle = brute_member(&x, &phi, false);
        prop_assert_eq!(in_aisle(&x, &phi).unwrap().accepted, aisle);
        for o in reg.of_side(OracleSide::Aisle) {
            prop_assert_eq!(o.check(&x, &phi).unwrap().accepted, aisle, "{}", o.name());
        }
        for o in reg.of_side(OracleSide::Coaisle) {
            prop_assert_eq!(o.check(&x, &phi).unwrap().accepted, coaisle, "{}", o.name());
        }
    }

    #[test]
    fn co_t_oracles_agree((x, phi) in case(Infinities::Both)) {
        let reg = OracleRegistry::standard();
        let verdicts: Vec<bool> = reg
            .of_side(OracleSide::CoTCoaisle)
            .map(|o| o.check(&x, &phi).unwrap().accepted)
            .collect();
        prop_assert_eq!(verdicts.len(), 2);
        prop_assert_eq!(verdicts[0], verdicts[1]);
    }

    #[test]
    fn truncation_splits_cohomology((x, phi) in case(Infinities::Both)) {
        let t = truncate_t(&x, &phi).unwrap();
        prop_assert!(t.evidence.all_pass(), "{:?}", t.evidence);
        prop_assert!(brute_member(&t.u_part, &phi, true));
        prop_assert!(brute_member(&t.v_part, &phi, false));
        let (hx, hu, hv) = (cohomology(&x), cohomology(&t.u_part), cohomology(&t.v_part));
        for k in degrees(&x) {
            prop_assert_eq!(hx.get(k).order(), hu.get(k).order() * hv.get(k).order());
        }
    }

    #[test]
    fn members_truncate_to_themselves((x, phi) in case(Infinities::NegOnly)) {
        let t = truncate_t(&x, &phi).unwrap();
        if brute_member(&x, &phi, true) {
            prop_assert!(t.v_part.is_acyclic());
        }
        if brute_member(&x, &phi, false) {
            prop_assert!(t.u_part.is_acyclic());
        }
    }

    #[test]
    fn generators_round_trip(r in any_ring(), s in any::<u64>()) {
        let phi = random_filtration(&r, (-3, 3), Infinities::NegOnly, s);
        let gens = generators_of(&phi).unwrap();
        prop_assert_eq!(filtration_of_generators(&r, &gens).unwrap(), phi.clone());
        // each generator lies in the aisle
        for g in &gens {
            prop_assert!(in_aisle(g, &phi).unwrap().accepted);
        }
    }

    #[test]
    fn aisle_is_closed_under_positive_shift((x, phi) in case(Infinities::NegOnly)) {
        if in_aisle(&x, &phi).unwrap().accepted {
            prop_assert!(in_aisle(&tlab::complex::shift(&x, 1), &phi).unwrap().accepted);
        }
    }
}

#[test]
fn unbounded_filtrations_have_no_generators() {
    let r = ring(12);
    let phi = ThomasonFiltration::from_cutoffs(&r, [(2, Cutoff::PosInf)]).unwrap();
    assert!(generators_of(&phi).is_err());
    let t = truncate_t(&Complex::stalk(&FinModule::cyclic(&r, 12), 0), &phi).unwrap();
    assert_eq!(cohomology(&t.u_part).get(0).order(), BigUint::from(4u32));
    assert_eq!(cohomology(&t.v_part).get(0).order(), BigUint::from(3u32));
}
