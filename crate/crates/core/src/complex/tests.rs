use super::*;
use crate::module::FinModule;

fn z(n: u64) -> CyclicRing {
    CyclicRing::new(n).unwrap()
}

fn m(r: &CyclicRing, f: &[u64]) -> FinModule {
    FinModule::new(r, f.to_vec()).unwrap()
}

fn factors(g: &GradedModule, k: i64) -> Vec<u64> {
    g.get(k).canonical().factors().to_vec()
}

#[test]
fn koszul_examples() {
    let r = z(12);
    let k2 = koszul(&r, &[2]);
    assert_eq!(k2.range(), Some((-1, 0)));
    let h = cohomology(&k2);
    assert_eq!(factors(&h, -1), vec![2]);
    assert_eq!(factors(&h, 0), vec![2]);
    assert_eq!(koszul(&r, &[]), Complex::stalk(&FinModule::free(&r, 1), 0));
    let k23 = koszul(&r, &[2, 3]);
    assert_eq!(k23.range(), Some((-2, 0)));
    assert!(k23.is_acyclic());
}

#[test]
fn json_literal_shape() {
    let r = z(12);
    let rr = FinModule::free(&r, 1);
    let d = ModuleMap::new(&rr, &rr, &[vec![2]]).unwrap();
    let x = Complex::new(&r, -1, vec![rr.clone(), rr.clone()], vec![d]).unwrap();
    assert_eq!(x, koszul(&r, &[2]));
}

#[test]
fn validation_rejects_nonzero_square() {
    let r = z(12);
    let rr = FinModule::free(&r, 1);
    let one = ModuleMap::identity(&rr);
    assert_eq!(
        Complex::new(&r, 0, vec![rr.clone(), rr.clone(), rr.clone()], vec![one.clone(), one]).unwrap_err(),
        Error::NotAComplex { degree: 0 }
    );
}

#[test]
fn trimming() {
    let r = z(12);
    let zero = FinModule::zero(&r);
    let z4 = m(&r, &[4]);
    let x = Complex::new(
        &r,
        -3,
        vec![zero.clone(), z4.clone(), zero.clone()],
        vec![ModuleMap::zero(&zero, &z4), ModuleMap::zero(&z4, &zero)],
    )
    .unwrap();
    assert_eq!(x, Complex::stalk(&z4, -2));
    assert!(Complex::stalk(&zero, 5).is_zero());
}

#[test]
fn shift_examples() {
    let r = z(12);
    let rr = FinModule::free(&r, 1);
    assert_eq!(shift(&Complex::stalk(&rr, 0), 1).range(), Some((-1, -1)));
    let k2 = koszul(&r, &[2]);
    assert_eq!(shift(&shift(&k2, 1), -1), k2);
    let h = cohomology(&shift(&k2, -1));
    assert_eq!(factors(&h, 0), vec![2]);
    assert_eq!(factors(&h, 1), vec![2]);
}

#[test]
fn cone_examples() {
    let r = z(12);
    let k2 = koszul(&r, &[2]);
    assert!(cone(&ChainMap::identity(&k2)).complex.is_acyclic());
    let zero = Complex::zero(&r);
    let c = cone(&ChainMap::zero(&zero, &k2)).complex;
    assert_eq!(c, k2);
    let rr = FinModule::free(&r, 1);
    let s = Complex::stalk(&rr, 0);
    let two = ChainMap::from_fn(&s, &s, |_| ModuleMap::scalar(&rr, 2));
    let c = cone(&two);
    assert_eq!(c.complex, koszul(&r, &[2]));
    assert!(c.inclusion.validate().is_ok());
    assert!(c.projection.validate().is_ok());
}

#[test]
fn truncation_examples() {
    let r = z(12);
    let x = shift(&koszul(&r, &[2]), -1);
    let t = soft_truncate(&x, 0, Side::Le);
    assert_eq!(t.complex.range(), Some((0, 0)));
    assert_eq!(t.complex.coord(0).factors(), &[2]);
    let h = cohomology(&t.complex);
    assert_eq!(factors(&h, 0), vec![2]);
    assert_eq!(soft_truncate(&x, 5, Side::Le).complex, x);
    assert_eq!(soft_truncate(&x, -5, Side::Gt).complex, x);
    let gt = soft_truncate(&x, 0, Side::Gt);
    assert_eq!(factors(&cohomology(&gt.complex), 1), vec![2]);
    assert!(factors(&cohomology(&gt.complex), 0).is_empty());

    let k2 = koszul(&r, &[2]);
    assert_eq!(brutal_truncate(&k2, 0, Side::Le), k2);
    assert!(brutal_truncate(&k2, 0, Side::Gt).is_zero());
    let low = brutal_truncate(&k2, -1, Side::Le);
    assert_eq!(low, Complex::stalk(&FinModule::free(&r, 1), -1));
}

#[test]
fn tensor_examples() {
    let r = z(12);
    let t = tensor_complexes(&koszul(&r, &[2]), &koszul(&r, &[3])).unwrap();
    assert!(t.is_acyclic());
    let k2 = koszul(&r, &[2]);
    let unit = Complex::stalk(&FinModule::free(&r, 1), 0);
    assert_eq!(tensor_complexes(&k2, &unit).unwrap(), k2);
    let t = tensor_complexes(&Complex::stalk(&m(&r, &[4]), 0), &Complex::stalk(&m(&r, &[6]), 0)).unwrap();
    assert_eq!(t, Complex::stalk(&m(&r, &[2]), 0));
    assert!(tensor_complexes(&k2, &koszul(&z(6), &[2])).is_err());
}

#[test]
fn hom_examples() {
    let r = z(12);
    let k2 = koszul(&r, &[2]);
    let z2 = Complex::stalk(&m(&r, &[2]), 0);
    let h = cohomology(&hom_complex(&k2, &z2).unwrap().complex);
    assert_eq!(factors(&h, 0), vec![2]);
    assert_eq!(factors(&h, 1), vec![2]);
    let unit = Complex::stalk(&FinModule::free(&r, 1), 0);
    let hx = hom_complex(&unit, &k2).unwrap().complex;
    assert!(cohomology(&hx).is_isomorphic(&cohomology(&k2)));
    assert_eq!(hx.range(), k2.range());
    assert!(hom_complex(&k2, &Complex::zero(&r)).unwrap().complex.is_zero());
}

#[test]
fn hom_cycles_are_chain_maps() {
    let r = z(12);
    let k2 = koszul(&r, &[2]);
    let z4 = Complex::stalk(&m(&r, &[4]), 0);
    let hc = hom_complex(&k2, &z4).unwrap();
    let sq = cohomology_at(&hc.complex, 0);
    for g in sq.generators() {
        let f = hc.chain_map_of(0, g);
        assert!(f.validate().is_ok());
        let back = hc.element_of(0, |i| f.component(i));
        assert_eq!(hc.complex.coord(0).reduce(&back), hc.complex.coord(0).reduce(g));
    }
}

#[test]
fn cohomology_examples() {
    let r = z(12);
    let k2 = koszul(&r, &[2]);
    assert!(cone(&ChainMap::identity(&k2)).complex.is_acyclic());
    let s = Complex::stalk(&m(&r, &[4, 3]), 2);
    let h = cohomology(&s);
    assert_eq!(h.parts().len(), 1);
    assert_eq!(factors(&h, 2), vec![12]);
    assert_eq!((h.inf(), h.sup()), (Some(2), Some(2)));
}

#[test]
fn cech_examples() {
    let r = z(12);
    let c = cech_tilde(&r, &[2]);
    assert_eq!(c.coord(1).factors(), &[3]);
    let h = cohomology(&c);
    assert_eq!(factors(&h, 0), vec![4]);
    assert!(h.get(1).is_zero());
    assert_eq!(cech_tilde(&r, &[]), Complex::stalk(&FinModule::free(&r, 1), 0));
    let c6 = cech_tilde(&r, &[6]);
    assert_eq!(c6, Complex::stalk(&FinModule::free(&r, 1), 0));
}

#[test]
fn cech_triangle_examples() {
    let r = z(12);
    let t = cech_triangle(&r, &r.ideal(2));
    let h = cohomology(&t.cech);
    assert_eq!(h.parts().len(), 1);
    assert_eq!(factors(&h, 0), vec![3]);
    let t = cech_triangle(&r, &r.ideal(1));
    assert!(t.tilde.is_acyclic());
    let h = cohomology(&t.cech);
    assert_eq!(factors(&h, 0), vec![12]);
    assert_eq!(h.parts().len(), 1);
    let t = cech_triangle(&r, &r.ideal(0));
    assert_eq!(factors(&cohomology(&t.tilde), 0), vec![12]);
    assert!(t.cech.is_acyclic());
}

#[test]
fn replacement_examples() {
    let r = z(4);
    let x = Complex::stalk(&m(&r, &[2]), 0);
    let (p, f) = projective_replacement(&x, -2).unwrap();
    assert_eq!(p.range(), Some((-2, 0)));
    assert!(p.is_free());
    assert!(p.coords().iter().all(|c| c.num_factors() == 1));
    let h = cohomology(&p);
    assert_eq!(factors(&h, 0), vec![2]);
    assert!(h.get(-1).is_zero());
    assert!(induced_map(&f, 0).is_iso());

    let unit = Complex::stalk(&FinModule::free(&r, 1), 0);
    assert_eq!(projective_replacement(&unit, 0).unwrap().0, unit);

    let r12 = z(12);
    let k2 = koszul(&r12, &[2]);
    let (p, f) = projective_replacement(&k2, -3).unwrap();
    for i in -2..=0 {
        assert!(induced_map(&f, i).is_iso(), "degree {i}");
    }
    assert!(p.is_free());
    assert!(matches!(
        projective_replacement(&k2, 0),
        Err(Error::FloorAboveWindow { floor: 0, lowest: -1 })
    ));
}

#[test]
fn hom_derived_examples() {
    let r = z(12);
    let k2 = koszul(&r, &[2]);
    let z2 = Complex::stalk(&m(&r, &[2]), 0);
    assert_eq!(hom_derived(&k2, &z2, 0).unwrap().factors(), &[2]);
    let unit = Complex::stalk(&FinModule::free(&r, 1), 0);
    for k in -2..=2 {
        assert!(hom_derived(&unit, &k2, k).unwrap().is_isomorphic(&cohomology(&k2).get(k)));
    }
    let r4 = z(4);
    let s = Complex::stalk(&m(&r4, &[2]), 0);
    for k in 0..4 {
        assert_eq!(hom_derived(&s, &s, k).unwrap().factors(), &[2], "k = {k}");
    }
    assert!(hom_derived(&s, &s, -1).unwrap().is_zero());
}

#[test]
fn compact_dual_examples() {
    let r = z(12);
    let d = compact_dual(&koszul(&r, &[2])).unwrap();
    assert_eq!(d.range(), Some((0, 1)));
    assert_eq!(d.diff(0).entry(0, 0), 10);
    let unit = Complex::stalk(&FinModule::free(&r, 1), 0);
    assert_eq!(compact_dual(&unit).unwrap(), unit);
    let k2 = koszul(&r, &[2]);
    let a = compact_dual(&shift(&k2, -1)).unwrap();
    let b = shift(&compact_dual(&k2).unwrap(), 1);
    assert_eq!(a.range(), b.range());
    assert!(cohomology(&a).is_isomorphic(&cohomology(&b)));
    assert_eq!(compact_dual(&compact_dual(&k2).unwrap()).unwrap().range(), k2.range());
    assert!(matches!(
        compact_dual(&Complex::stalk(&m(&r, &[2]), 0)),
        Err(Error::NotFree { degree: 0 })
    ));
}

#[test]
fn tower_examples() {
    let r = z(12);
    let z4 = m(&r, &[4]);
    let ms = vec![z4.clone(); 6];
    let two = vec![ModuleMap::scalar(&z4, 2); 5];
    assert!(tower_colimit(&ms, &two).unwrap().is_zero());
    let ids = vec![ModuleMap::identity(&z4); 5];
    assert_eq!(tower_colimit(&ms, &ids).unwrap(), z4);
    let three = vec![ModuleMap::scalar(&z4, 3); 5];
    assert_eq!(tower_colimit(&ms, &three).unwrap(), z4);
    assert_eq!(
        tower_colimit(&ms[..2], &two[..1]).unwrap_err(),
        Error::TowerUnstable { len: 2 }
    );
}
