use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::module::{cokernel, hom_module, FinModule, ModuleMap};
use crate::ring::CyclicRing;
use crate::tstruct::{Cutoff, ThomasonFiltration};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a base seed with case coordinates so that each case has its own
/// stream regardless of scheduling.
pub fn split_seed(seed: u64, parts: &[u64]) -> u64 {
    // splitmix64 over the sequence
    let mut z = seed;
    for &p in parts {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(p);
        let mut x = z;
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z = x ^ (x >> 31);
    }
    z
}

pub(crate) fn random_module(ring: &CyclicRing, max_factors: usize, rng: &mut ChaCha8Rng) -> FinModule {
    let divisors: Vec<u64> = ring.nonunit_divisors();
    let count = rng.gen_range(0..=max_factors);
    FinModule::new(ring, (0..count).map(|_| divisors[rng.gen_range(0..divisors.len())]).collect())
        .expect("divisors of n are valid factors")
}

/// A uniformly random homomorphism `m -> n`.
pub(crate) fn random_map(m: &FinModule, n: &FinModule, rng: &mut ChaCha8Rng) -> ModuleMap {
    let hom = hom_module(m, n).expect("same ring");
    let coords: Vec<u64> = hom.module.factors().iter().map(|&d| rng.gen_range(0..d)).collect();
    hom.to_map(&coords)
}

fn random_with(
    ring: &CyclicRing,
    lo: i64,
    hi: i64,
    rng: &mut ChaCha8Rng,
    mut module: impl FnMut(&mut ChaCha8Rng) -> FinModule,
) -> Complex {
    if hi < lo {
        return Complex::zero(ring);
    }
    let coords: Vec<FinModule> = (lo..=hi).map(|_| module(rng)).collect();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for i in 0..coords.len().saturating_sub(1) {
        // d^k factors through coker d^{k-1}, so d^k d^{k-1} = 0
        let prev = diffs
            .last()
            .cloned()
            .unwrap_or_else(|| ModuleMap::zero(&FinModule::zero(ring), &coords[i]));
        let (c, proj) = cokernel(&prev);
        let d = random_map(&c, &coords[i + 1], rng).compose(&proj).expect("composable");
        diffs.push(d);
    }
    Complex::new(ring, lo, coords, diffs).expect("generated differentials square to zero")
}

/// A random bounded complex with coordinates in `[lo, hi]`, each a sum of at
/// most `max_factors` cyclic modules. Deterministic in `seed`.
pub fn random_complex(ring: &CyclicRing, range: (i64, i64), max_factors: usize, seed: u64) -> Complex {
    let mut r = rng(seed);
    random_with(ring, range.0, range.1, &mut r, |r| random_module(ring, max_factors, r))
}

/// A random bounded complex of free modules of rank at most `max_rank`.
pub fn random_free_complex(ring: &CyclicRing, range: (i64, i64), max_rank: usize, seed: u64) -> Complex {
    let mut r = rng(seed);
    random_with(ring, range.0, range.1, &mut r, |r| FinModule::free(ring, r.gen_range(0..=max_rank)))
}

/// Which infinite cutoffs an enumeration includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Infinities {
    None,
    NegOnly,
    Both,
}

fn cutoff_values(window: (i64, i64), inf: Infinities) -> Vec<Cutoff> {
    let mut vals = Vec::new();
    if inf != Infinities::None {
        vals.push(Cutoff::NegInf);
    }
    vals.extend((window.0..=window.1).map(Cutoff::Finite));
    if inf == Infinities::Both {
        vals.push(Cutoff::PosInf);
    }
    vals
}

/// Every filtration whose cutoffs lie in `[a, b]` plus the selected
/// infinities, in lexicographic order of the cutoff vector.
pub fn enumerate_filtrations(ring: &CyclicRing, window: (i64, i64), inf: Infinities) -> Vec<ThomasonFiltration> {
    let vals = cutoff_values(window, inf);
    let primes = ring.prime_list();
    let mut out = Vec::new();
    let mut idx = vec![0usize; primes.len()];
    if vals.is_empty() {
        return out;
    }
    loop {
        let cuts = primes.iter().zip(&idx).map(|(&p, &i)| (p, vals[i]));
        out.push(ThomasonFiltration::from_cutoffs(ring, cuts).expect("primes of the ring"));
        let mut pos = primes.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < vals.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// A random filtration with cutoffs drawn from the same value set.
pub fn random_filtration(ring: &CyclicRing, window: (i64, i64), inf: Infinities, seed: u64) -> ThomasonFiltration {
    let vals = cutoff_values(window, inf);
    let mut r = rng(seed);
    let cuts: Vec<(u64, Cutoff)> = ring
        .prime_list()
        .into_iter()
        .map(|p| (p, vals[r.gen_range(0..vals.len())]))
        .collect();
    ThomasonFiltration::from_cutoffs(ring, cuts).expect("primes of the ring")
}
