//! Element enumeration over small modules: an independent path for kernels,
//! cohomology, Hom counts and essentiality.

use std::collections::HashSet;

use crate::complex::Complex;
use crate::module::{FinModule, ModuleMap};
use crate::ring::CyclicRing;

/// Largest module this layer will enumerate.
pub const MAX_ELEMENTS: u128 = 1 << 20;

pub fn enumerable(m: &FinModule) -> bool {
    m.order_u128().is_some_and(|o| o <= MAX_ELEMENTS)
}

/// Every element of `m`, in lexicographic order of coordinates.
pub fn elements(m: &FinModule) -> Vec<Vec<u64>> {
    assert!(enumerable(m), "{m:?} is too large to enumerate");
    let mut out = vec![Vec::new()];
    for &d in m.factors() {
        out = out
            .into_iter()
            .flat_map(|x| {
                (0..d).map(move |a| {
                    let mut y = x.clone();
                    y.push(a);
                    y
                })
            })
            .collect();
    }
    out
}

/// Isomorphism type of `K / I` from the counts `|(K/I)[p^k]|`.
///
/// `k_set` must be a subgroup of `ambient` containing `i_set`.
pub fn quotient_type(ambient: &FinModule, k_set: &[Vec<u64>], i_set: &HashSet<Vec<u64>>) -> FinModule {
    let ring = ambient.ring();
    let i_len = i_set.len() as u128;
    let mut factors = Vec::new();
    for &(p, e) in ring.primes() {
        // ranks[k] = number of cyclic p-factors of exponent >= k
        let mut prev: u128 = 1;
        let mut ranks = vec![0u32; e as usize + 2];
        for k in 1..=e {
            let pk = p.pow(k);
            let count = k_set.iter().filter(|x| i_set.contains(&ambient.scale_element(pk, x))).count() as u128;
            let torsion = count / i_len;
            let mut ratio = torsion / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p as u128;
                r += 1;
            }
            ranks[k as usize] = r;
            prev = torsion;
        }
        for k in 1..=e as usize {
            for _ in 0..(ranks[k] - ranks[k + 1]) {
                factors.push(p.pow(k as u32));
            }
        }
    }
    FinModule::new(ring, factors).expect("prime powers divide n").canonical()
}

fn subgroup_type(ambient: &FinModule, k_set: &[Vec<u64>]) -> FinModule {
    let zero: HashSet<Vec<u64>> = [ambient.zero_element()].into_iter().collect();
    quotient_type(ambient, k_set, &zero)
}

/// Isomorphism type of a module, recomputed from its element set.
pub fn module_type(m: &FinModule) -> FinModule {
    subgroup_type(m, &elements(m))
}

pub fn kernel_set(f: &ModuleMap) -> Vec<Vec<u64>> {
    let zero = f.target().zero_element();
    elements(f.source()).into_iter().filter(|x| f.apply(x) == zero).collect()
}

pub fn image_set(f: &ModuleMap) -> HashSet<Vec<u64>> {
    elements(f.source()).iter().map(|x| f.apply(x)).collect()
}

pub fn kernel_type(f: &ModuleMap) -> FinModule {
    subgroup_type(f.source(), &kernel_set(f))
}

pub fn image_type(f: &ModuleMap) -> FinModule {
    let img: Vec<Vec<u64>> = image_set(f).into_iter().collect();
    subgroup_type(f.target(), &img)
}

/// `ker f_out / im f_in`.
pub fn subquotient_type(f_in: &ModuleMap, f_out: &ModuleMap) -> FinModule {
    quotient_type(f_out.source(), &kernel_set(f_out), &image_set(f_in))
}

pub fn cohomology_type(x: &Complex, k: i64) -> FinModule {
    subquotient_type(&x.diff(k - 1), &x.diff(k))
}

/// Number of elements `y` of `m` with `d y = 0`.
fn annihilated_by(m: &FinModule, d: u64) -> Vec<Vec<u64>> {
    let zero = m.zero_element();
    elements(m).into_iter().filter(|y| m.scale_element(d, y) == zero).collect()
}

/// All homomorphisms `m -> n`, as the list of generator images.
pub fn homs(m: &FinModule, n: &FinModule) -> Vec<Vec<Vec<u64>>> {
    let mut out: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
    for &d in m.factors() {
        let choices = annihilated_by(n, d);
        out = out
            .into_iter()
            .flat_map(|imgs| {
                choices.iter().map(move |y| {
                    let mut v = imgs.clone();
                    v.push(y.clone());
                    v
                })
            })
            .collect();
    }
    out
}

pub fn hom_count(m: &FinModule, n: &FinModule) -> u128 {
    m.factors().iter().map(|&d| annihilated_by(n, d).len() as u128).product()
}

fn apply_images(n: &FinModule, images: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    let mut acc = n.zero_element();
    for (img, &c) in images.iter().zip(x) {
        acc = n.add_elements(&acc, &n.scale_element(c, img));
    }
    acc
}

/// `|Hom_K(X, E[-n])|`: maps `X^n -> E` killing the boundaries, modulo
/// those factoring through `d^n`.
pub fn stalk_hom_count(x: &Complex, e: &FinModule, n: i64) -> u128 {
    let src = x.coord(n);
    let d_in = x.diff(n - 1);
    let d_out = x.diff(n);
    let zero = e.zero_element();
    let cycles = homs(&src, e)
        .into_iter()
        .filter(|f| {
            (0..d_in.source().num_factors()).all(|j| {
                let b = d_in.apply(&d_in.source().basis_element(j));
                apply_images(e, f, &b) == zero
            })
        })
        .count() as u128;
    let boundaries: HashSet<Vec<Vec<u64>>> = homs(&x.coord(n + 1), e)
        .into_iter()
        .map(|h| {
            (0..src.num_factors())
                .map(|j| apply_images(e, &h, &d_out.apply(&src.basis_element(j))))
                .collect()
        })
        .collect();
    cycles / boundaries.len() as u128
}

/// Baer's criterion: every map from an ideal `(d)` into `e` extends to `R`.
pub fn is_injective_module(e: &FinModule) -> bool {
    let ring = e.ring();
    let n = ring.modulus();
    let elems = elements(e);
    ring.divisors().into_iter().all(|d| {
        let reachable: HashSet<Vec<u64>> = elems.iter().map(|z| e.scale_element(d, z)).collect();
        elems
            .iter()
            .filter(|y| e.scale_element(n / d, y) == e.zero_element())
            .all(|y| reachable.contains(y))
    })
}

/// Every nonzero element of the target has a nonzero multiple in the image.
pub fn is_essential(f: &ModuleMap) -> bool {
    let e = f.target();
    let img = image_set(f);
    let zero = e.zero_element();
    let n = e.ring().modulus();
    elements(e)
        .into_iter()
        .filter(|y| *y != zero)
        .all(|y| (0..n).any(|r| {
            let ry = e.scale_element(r, &y);
            ry != zero && img.contains(&ry)
        }))
}

/// The primes `p` for which `M_p ≠ 0`: some element has annihilator inside `(p)`.
pub fn support(m: &FinModule) -> Vec<u64> {
    let elems = elements(m);
    m.ring()
        .prime_list()
        .into_iter()
        .filter(|&p| {
            // M_p ≠ 0 iff some element survives multiplication by the
            // prime-to-p part of n
            let n = m.ring().modulus();
            let away = n / m.ring().prime_power(p).unwrap();
            elems.iter().any(|x| m.scale_element(away, x) != m.zero_element())
        })
        .collect()
}

/// Idempotents of `Z/n` by search: `e` with `e ≡ 1` on the `p`-part and
/// `0` on the others.
pub fn idempotent_for(ring: &CyclicRing, p: u64) -> Option<u64> {
    let n = ring.modulus();
    let q = ring.prime_power(p)?;
    (0..n).find(|&e| (e as u128 * e as u128 % n as u128) as u64 == e && e % q == 1 % q && (n / q == 1 || e % (n / q) == 0))
}
