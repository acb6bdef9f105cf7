use super::*;
use crate::complex::{cohomology, koszul, shift, Complex};
use crate::module::FinModule;
use crate::ring::CyclicRing;

fn z(n: u64) -> CyclicRing {
    CyclicRing::new(n).unwrap()
}

fn stalk(r: &CyclicRing, d: u64, deg: i64) -> Complex {
    Complex::stalk(&FinModule::cyclic(r, d), deg)
}

fn phi(r: &CyclicRing, cuts: &[(u64, Cutoff)]) -> ThomasonFiltration {
    ThomasonFiltration::from_cutoffs(r, cuts.iter().copied()).unwrap()
}

fn worked(r: &CyclicRing) -> ThomasonFiltration {
    phi(r, &[(2, Cutoff::Finite(1)), (3, Cutoff::Finite(0))])
}

fn coaisle_all(x: &Complex, f: &ThomasonFiltration) -> [bool; 3] {
    [
        in_coaisle_cech(x, f).unwrap().accepted,
        in_coaisle_hom(x, f).unwrap().accepted,
        in_coaisle_reduced(x, f).unwrap().accepted,
    ]
}

#[test]
fn aisle_examples() {
    let r = z(12);
    let f = worked(&r);
    assert!(in_aisle(&stalk(&r, 4, 1), &f).unwrap().accepted);
    assert!(!in_aisle(&stalk(&r, 3, 1), &f).unwrap().accepted);
    assert!(in_aisle(&koszul(&r, &[2, 3]), &f).unwrap().accepted);
}

#[test]
fn coaisle_examples() {
    let r = z(12);
    let f = worked(&r);
    assert_eq!(coaisle_all(&stalk(&r, 3, 1), &f), [true; 3]);
    assert_eq!(coaisle_all(&stalk(&r, 12, 0), &f), [false; 3]);
    assert_eq!(coaisle_all(&Complex::zero(&r), &f), [true; 3]);
    let g = phi(&r, &[(2, Cutoff::Finite(0)), (3, Cutoff::NegInf)]);
    assert_eq!(coaisle_all(&stalk(&r, 2, 0), &g), [false; 3]);
    assert_eq!(coaisle_all(&stalk(&r, 2, 1), &g), [true; 3]);
    let k3 = shift(&koszul(&r, &[3]), -1);
    assert_eq!(coaisle_all(&k3, &f), [false; 3]);
}

#[test]
fn reduced_profile_matches_direct_check() {
    let r = z(12);
    let xs = [stalk(&r, 3, 1), stalk(&r, 12, 0), shift(&koszul(&r, &[3]), -1), koszul(&r, &[2])];
    for x in &xs {
        let prof = ReducedOracle.profile(x).unwrap();
        for a in [Cutoff::NegInf, Cutoff::Finite(-1), Cutoff::Finite(0), Cutoff::Finite(1), Cutoff::PosInf] {
            for b in [Cutoff::NegInf, Cutoff::Finite(0), Cutoff::PosInf] {
                let f = phi(&r, &[(2, a), (3, b)]);
                assert_eq!(
                    ReducedOracle.decide(&prof, &f).accepted,
                    in_coaisle_reduced(x, &f).unwrap().accepted
                );
            }
        }
    }
}

#[test]
fn co_t_examples() {
    let r = z(12);
    let g = phi(&r, &[(2, Cutoff::Finite(0)), (3, Cutoff::NegInf)]);
    assert!(in_co_t_coaisle(&stalk(&r, 3, 0), &g).unwrap().accepted);
    assert!(in_co_t_coaisle(&stalk(&r, 2, -1), &g).unwrap().accepted);
    assert!(!in_co_t_coaisle(&stalk(&r, 2, 0), &g).unwrap().accepted);
    for x in [stalk(&r, 3, 0), stalk(&r, 2, -1), stalk(&r, 2, 0)] {
        assert_eq!(
            DualHomOracle.check(&x, &g).unwrap().accepted,
            in_co_t_coaisle(&x, &g).unwrap().accepted
        );
    }
}

#[test]
fn truncation_examples() {
    let r = z(12);
    let f = worked(&r);
    let t = truncate_t(&shift(&koszul(&r, &[3]), -1), &f).unwrap();
    let hu = cohomology(&t.u_part);
    let hv = cohomology(&t.v_part);
    assert_eq!(hu.parts().len(), 1);
    assert_eq!(hu.get(0).factors(), &[3]);
    assert_eq!(hv.parts().len(), 1);
    assert_eq!(hv.get(1).factors(), &[3]);

    let x = stalk(&r, 4, 1);
    let t = truncate_t(&x, &f).unwrap();
    assert!(cohomology(&t.u_part).is_isomorphic(&cohomology(&x)));
    assert!(t.v_part.is_acyclic());

    let t = truncate_t(&stalk(&r, 12, 1), &f).unwrap();
    assert!(cohomology(&t.u_part).is_isomorphic(&cohomology(&stalk(&r, 4, 1))));
    assert!(cohomology(&t.v_part).is_isomorphic(&cohomology(&stalk(&r, 3, 1))));
    assert!(t.evidence.all_pass());
}

#[test]
fn constant_truncation_matches_cech() {
    let r = z(12);
    let c = ThomasonFiltration::from_cutoffs(&r, [(2, Cutoff::PosInf)]).unwrap();
    let t = truncate_t(&koszul(&r, &[6]), &c).unwrap();
    assert_eq!(t.evidence.constant_agrees, Some(true));
}

#[test]
fn generator_examples() {
    let r = z(12);
    let g = generators_of(&worked(&r)).unwrap();
    assert_eq!(g, vec![shift(&koszul(&r, &[2]), -1), koszul(&r, &[3])]);
    let std = phi(&r, &[(2, Cutoff::Finite(0)), (3, Cutoff::Finite(0))]);
    assert_eq!(generators_of(&std).unwrap(), vec![koszul(&r, &[2]), koszul(&r, &[3])]);
    assert_eq!(
        filtration_of_generators(&r, &[Complex::stalk(&FinModule::free(&r, 1), 0)]).unwrap(),
        std
    );
    let inf = phi(&r, &[(2, Cutoff::PosInf)]);
    assert_eq!(generators_of(&inf).unwrap_err(), crate::Error::InfiniteCutoff(2));
    assert_eq!(filtration_of_generators(&r, &g).unwrap(), worked(&r));
    let empty = filtration_of_generators(&r, &[]).unwrap();
    assert!(empty.cutoffs().values().all(|&c| c == Cutoff::NegInf));
}

#[test]
fn stalk_hom_examples() {
    let r = z(12);
    let z4 = FinModule::cyclic(&r, 4);
    let c = stalk_hom_check(&koszul(&r, &[2]), &z4, 0).unwrap();
    assert_eq!(c.lhs.factors(), &[2]);
    assert_eq!(c.rhs.factors(), &[2]);
    assert!(c.bijective);
    let c = stalk_hom_check(&koszul(&r, &[2]), &z4, -3).unwrap();
    assert!(c.lhs.is_zero() && c.rhs.is_zero());
    let e = FinModule::new(&r, vec![4, 3]).unwrap();
    let c = stalk_hom_check(&Complex::stalk(&FinModule::free(&r, 1), 0), &e, 0).unwrap();
    assert!(c.lhs.is_isomorphic(&e) && c.rhs.is_isomorphic(&e) && c.bijective);
    assert!(matches!(
        stalk_hom_check(&koszul(&r, &[2]), &FinModule::cyclic(&r, 2), 0),
        Err(crate::Error::NotInjective { factor: 2 })
    ));
}

#[test]
fn coresolution_examples() {
    let r = z(4);
    let f = phi(&r, &[(2, Cutoff::Finite(-1))]);
    let steps = coresolve_in_coaisle(&stalk(&r, 2, 0), &f, 3).unwrap();
    assert_eq!(steps.len(), 3);
    for (i, s) in steps.iter().enumerate() {
        assert_eq!(s.module.factors(), &[4]);
        assert_eq!(s.degree, i as i64);
        assert!(s.verdicts.iter().all(|v| v.1));
    }
    let steps = coresolve_in_coaisle(&Complex::stalk(&FinModule::free(&r, 1), 0), &f, 3).unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0].module.factors(), &[4]);
    assert!(matches!(
        coresolve_in_coaisle(&stalk(&r, 2, -1), &f, 3),
        Err(crate::Error::NotInCoaisle(_))
    ));
}

#[test]
fn registry_lookup() {
    let reg = OracleRegistry::standard();
    assert_eq!(reg.names(), vec!["support", "cech", "hom", "reduced", "koszul-tensor", "dual-hom"]);
    assert!(reg.get("support").unwrap().noetherian_only());
    assert_eq!(reg.of_side(OracleSide::Coaisle).count(), 3);
    assert!(reg.get("nope").is_none());
}
