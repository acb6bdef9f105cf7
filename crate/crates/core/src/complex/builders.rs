use super::{cone, tensor_complexes, ChainMap, Complex};
use crate::module::{FinModule, ModuleMap};
use crate::ring::{localize_away, CyclicRing, Ideal};

fn tensor_all(ring: &CyclicRing, factors: impl Iterator<Item = Complex>) -> Complex {
    let unit = Complex::stalk(&FinModule::free(ring, 1), 0);
    factors.fold(unit, |acc, c| tensor_complexes(&acc, &c).expect("same ring"))
}

/// `K(x) = (R --x--> R)` in degrees -1, 0.
fn koszul_one(ring: &CyclicRing, x: u64) -> Complex {
    let r = FinModule::free(ring, 1);
    let d = ModuleMap::scalar(&r, ring.reduce(x as i128));
    Complex::from_parts(ring, -1, vec![r.clone(), r], vec![d])
}

/// `K(x_1, …, x_m) = ⊗_i K(x_i)`; the empty list gives `R[0]`.
pub fn koszul(ring: &CyclicRing, xs: &[u64]) -> Complex {
    tensor_all(ring, xs.iter().map(|&x| koszul_one(ring, x)))
}

/// `R -> R[x^{-1}]` in degrees 0, 1; the localization is `Z/m` for the
/// part `m` of `n` coprime to `x`.
fn cech_one(ring: &CyclicRing, x: u64) -> Complex {
    let r = FinModule::free(ring, 1);
    let loc = FinModule::cyclic(ring, localize_away(ring, x).modulus);
    let d = ModuleMap::from_columns(&r, &loc, &[vec![1; loc.num_factors()]]);
    Complex::from_parts(ring, 0, vec![r, loc], vec![d])
}

/// `Č~(x_1, …, x_m) = ⊗_i (R -> R[x_i^{-1}])`.
pub fn cech_tilde(ring: &CyclicRing, xs: &[u64]) -> Complex {
    tensor_all(ring, xs.iter().map(|&x| cech_one(ring, x)))
}

/// `Č~(I) -> R -> Č(I) -> Č~(I)[1]`, built from the canonical generator
/// of `I`.
#[derive(Clone, Debug)]
pub struct CechTriangle {
    pub tilde: Complex,
    pub augmentation: ChainMap,
    pub cech: Complex,
    pub to_cech: ChainMap,
    pub connecting: ChainMap,
}

pub fn cech_triangle(ring: &CyclicRing, ideal: &Ideal) -> CechTriangle {
    let tilde = cech_tilde(ring, &[ideal.generator()]);
    let r = FinModule::free(ring, 1);
    let unit = Complex::stalk(&r, 0);
    let augmentation = ChainMap::from_fn(&tilde, &unit, |k| {
        if k == 0 {
            ModuleMap::identity(&r)
        } else {
            ModuleMap::zero(&tilde.coord(k), &unit.coord(k))
        }
    });
    let c = cone(&augmentation);
    CechTriangle {
        tilde,
        augmentation,
        cech: c.complex,
        to_cech: c.inclusion,
        connecting: c.projection,
    }
}
