mod common;

use common::*;
use proptest::prelude::*;
use tlab::complex::{
    cech_tilde, cohomology, compact_dual, cone, hom_complex, hom_derived, hom_derived_range, koszul,
    projective_replacement, shift, soft_truncate, tensor_complexes, ChainMap, Complex, Side,
};
use tlab::lab::{brute, random_complex, random_free_complex};
use tlab::module::FinModule;
use tlab::Error;

fn complex() -> impl Strategy<Value = Complex> {
    (any_ring(), any::<u64>()).prop_map(|(r, s)| random_complex(&r, (-2, 1), 2, s))
}

fn pair() -> impl Strategy<Value = (Complex, Complex)> {
    (any_ring(), any::<u64>(), any::<u64>())
        .prop_map(|(r, a, b)| (random_complex(&r, (-1, 1), 2, a), random_complex(&r, (-1, 1), 2, b)))
}

fn degrees(x: &Complex) -> Vec<i64> {
    x.range().map_or(vec![], |(lo, hi)| (lo - 1..=hi + 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cohomology_matches_enumeration(x in complex()) {
        let h = cohomology(&x);
        for k in degrees(&x) {
            prop_assert_eq!(h.get(k).canonical(), brute::cohomology_type(&x, k));
        }
    }

    #[test]
    fn shift_moves_cohomology(x in complex(), k in -3i64..3) {
        let s = shift(&x, k);
        for i in degrees(&s) {
            prop_assert!(cohomology(&s).get(i).is_isomorphic(&cohomology(&x).get(i + k)));
        }
        prop_assert_eq!(shift(&s, -k), x);
    }

    #[test]
    fn cone_of_identity_is_acyclic(x in complex()) {
        prop_assert!(cone(&ChainMap::identity(&x)).complex.is_acyclic());
    }

    #[test]
    fn soft_truncations_split_cohomology(x in complex(), n in -3i64..3) {
        let le = soft_truncate(&x, n, Side::Le);
        let gt = soft_truncate(&x, n, Side::Gt);
        prop_assert!(le.map.is_quasi_iso() || x.range().is_some());
        let (hx, hl, hg) = (cohomology(&x), cohomology(&le.complex), cohomology(&gt.complex));
        for k in degrees(&x) {
            let (want_l, want_g) = if k <= n { (hx.get(k), FinModule::zero(x.ring())) } else { (FinModule::zero(x.ring()), hx.get(k)) };
            prop_assert!(hl.get(k).is_isomorphic(&want_l));
            prop_assert!(hg.get(k).is_isomorphic(&want_g));
        }
        // the structure maps are isomorphisms on the surviving degrees
        for k in degrees(&x) {
            let m = if k <= n { tlab::complex::induced_map(&le.map, k) } else { tlab::complex::induced_map(&gt.map, k) };
            prop_assert!(m.is_iso());
        }
    }

    #[test]
    fn tensor_with_unit_is_identity(x in complex()) {
        let unit = Complex::stalk(&FinModule::free(x.ring(), 1), 0);
        prop_assert!(cohomology(&tensor_complexes(&unit, &x).unwrap()).is_isomorphic(&cohomology(&x)));
    }

    #[test]
    fn hom_cycles_count_chain_maps_to_stalks(x in complex()) {
        let r = x.ring().clone();
        for &(p, _) in r.primes() {
            let e = FinModule::cyclic(&r, r.prime_power(p).unwrap());
            for n in degrees(&x) {
                let h = hom_complex(&x, &Complex::stalk(&e, n)).unwrap();
                let h0 = cohomology(&h.complex).get(0);
                prop_assert_eq!(h0.order(), brute::stalk_hom_count(&x, &e, n).into());
            }
        }
    }

    #[test]
    fn replacement_is_a_quasi_iso_above_the_floor(x in complex(), drop in 0i64..3) {
        let Some((lo, _)) = x.range() else { return Ok(()) };
        let floor = lo - drop;
        let (p, phi) = projective_replacement(&x, floor).unwrap();
        prop_assert!(p.is_free());
        phi.validate().unwrap();
        for k in floor + 1..=x.range().unwrap().1 {
            prop_assert!(tlab::complex::induced_map(&phi, k).is_iso(), "degree {}", k);
        }
        prop_assert_eq!(projective_replacement(&x, lo + 1).unwrap_err(), Error::FloorAboveWindow { floor: lo + 1, lowest: lo });
    }

    #[test]
    fn hom_from_unit_is_cohomology(x in complex()) {
        let unit = Complex::stalk(&FinModule::free(x.ring(), 1), 0);
        for (k, m) in hom_derived_range(&unit, &x, -3, 2).unwrap() {
            prop_assert!(m.is_isomorphic(&cohomology(&x).get(k)));
        }
    }

    #[test]
    fn derived_hom_is_independent_of_floor((x, y) in pair()) {
        let a = hom_derived_range(&x, &y, -1, 1).unwrap();
        let lo = y.range().map_or(0, |(l, _)| l);
        let b = tlab::complex::hom_derived_with_floor(&x, &y, -1, 1, lo - 6).unwrap();
        for k in -1..=1 {
            prop_assert!(a[&k].is_isomorphic(&b[&k]));
        }
    }

    #[test]
    fn tensor_commutes_in_cohomology((x, y) in pair()) {
        let a = tensor_complexes(&x, &y).unwrap();
        let b = tensor_complexes(&y, &x).unwrap();
        prop_assert!(cohomology(&a).is_isomorphic(&cohomology(&b)));
    }

    #[test]
    fn dual_of_free_is_free_and_involutive(r in any_ring(), s in any::<u64>()) {
        let x = random_free_complex(&r, (-2, 0), 2, s);
        let d = compact_dual(&x).unwrap();
        prop_assert!(d.is_free());
        let dd = compact_dual(&d).unwrap();
        prop_assert!(cohomology(&dd).is_isomorphic(&cohomology(&x)));
    }
}

#[test]
fn random_generator_fuzz() {
    // every generated complex passes validation
    for n in RINGS {
        let r = ring(n);
        for seed in 0..2_500u64 {
            let x = random_complex(&r, (-2, 1), 2, seed);
            Complex::new(&r, x.min_degree(), x.coords().to_vec(), x.diffs().to_vec()).unwrap();
            for w in x.diffs().windows(2) {
                assert!(w[1].compose(&w[0]).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn koszul_and_cech_over_every_divisor() {
    for n in RINGS {
        let r = ring(n);
        for d in r.divisors() {
            let k = koszul(&r, &[d]);
            assert!(cohomology(&k).get(0).is_isomorphic(&FinModule::cyclic(&r, d)));
            let c = cech_tilde(&r, &[d]);
            // H^0 of the Cech complex is the d-power torsion
            let torsion = brute::elements(&FinModule::free(&r, 1))
                .into_iter()
                .filter(|x| (1..=8).any(|m| (x[0] as u128 * (d as u128).pow(m)) % n as u128 == 0))
                .count() as u64;
            assert_eq!(cohomology(&c).get(0).order(), torsion.into(), "Z/{n}, d = {d}");
        }
    }
}

#[test]
fn hom_examples() {
    let r = ring(12);
    let z2 = FinModule::cyclic(&r, 2);
    assert!(hom_derived(&koszul(&r, &[2]), &Complex::stalk(&z2, 0), 0).unwrap().is_isomorphic(&z2));
    let r4 = ring(4);
    let z2 = FinModule::cyclic(&r4, 2);
    for k in 0..4 {
        let h = hom_derived(&Complex::stalk(&z2, 0), &Complex::stalk(&z2, 0), k).unwrap();
        assert!(h.is_isomorphic(&z2), "k = {k}");
    }
}
