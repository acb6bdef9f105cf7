#![allow(dead_code)]

use proptest::prelude::*;
use tlab::module::{FinModule, ModuleMap};
use tlab::ring::{gcd, CyclicRing};

pub const RINGS: [u64; 4] = [4, 12, 30, 36];

pub fn ring(n: u64) -> CyclicRing {
    CyclicRing::new(n).unwrap()
}

pub fn any_ring() -> impl Strategy<Value = CyclicRing> {
    prop::sample::select(RINGS.to_vec()).prop_map(ring)
}

pub fn module_in(r: &CyclicRing, max: usize) -> impl Strategy<Value = FinModule> {
    let r = r.clone();
    prop::collection::vec(prop::sample::select(r.nonunit_divisors()), 0..=max)
        .prop_map(move |f| FinModule::new(&r, f).unwrap())
}

/// A homomorphism with entries forced into the well-defined lattice.
pub fn map_between(m: &FinModule, n: &FinModule) -> impl Strategy<Value = ModuleMap> {
    let (m, n) = (m.clone(), n.clone());
    let cells = m.num_factors() * n.num_factors();
    prop::collection::vec(any::<u64>(), cells).prop_map(move |raw| {
        let rows: Vec<Vec<u64>> = (0..n.num_factors())
            .map(|i| {
                let e = n.factors()[i];
                (0..m.num_factors())
                    .map(|j| {
                        let step = e / gcd(e, m.factors()[j]);
                        (raw[i * m.num_factors() + j] % e) / step * step
                    })
                    .collect()
            })
            .collect();
        ModuleMap::new(&m, &n, &rows).unwrap()
    })
}

pub fn any_map() -> impl Strategy<Value = ModuleMap> {
    any_ring()
        .prop_flat_map(|r| (module_in(&r, 3), module_in(&r, 3)))
        .prop_flat_map(|(m, n)| map_between(&m, &n))
}
