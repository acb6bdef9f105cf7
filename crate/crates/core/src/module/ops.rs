use super::subquotient::{kernel_lattice, Subquotient};
use super::{FinModule, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::ZnMatrix;
use crate::ring::{gcd, mul_mod, subset_idempotent, valuation, SpecSubset};

pub(crate) fn kernel_subquotient(f: &ModuleMap) -> Subquotient {
    Subquotient::build(f.source(), &kernel_lattice(f), &[])
}

fn columns(f: &ModuleMap) -> Vec<Vec<u64>> {
    (0..f.source().num_factors()).map(|j| f.matrix().column(j)).collect()
}

/// Kernel in canonical form with its inclusion into the source.
pub fn kernel(f: &ModuleMap) -> (FinModule, ModuleMap) {
    let sq = kernel_subquotient(f);
    (sq.module().clone(), sq.generator_map())
}

pub(crate) fn image_subquotient(f: &ModuleMap) -> Subquotient {
    Subquotient::build(f.target(), &columns(f), &[])
}

/// Image in canonical form with its inclusion into the target.
pub fn image(f: &ModuleMap) -> (FinModule, ModuleMap) {
    let sq = image_subquotient(f);
    (sq.module().clone(), sq.generator_map())
}

pub(crate) fn cokernel_subquotient(f: &ModuleMap) -> Subquotient {
    let t = f.target();
    let basis: Vec<Vec<u64>> = (0..t.num_factors()).map(|k| t.basis_element(k)).collect();
    Subquotient::build(t, &basis, &columns(f))
}

/// Cokernel in canonical form with the projection from the target.
pub fn cokernel(f: &ModuleMap) -> (FinModule, ModuleMap) {
    let sq = cokernel_subquotient(f);
    let t = f.target();
    let basis: Vec<Vec<u64>> = (0..t.num_factors()).map(|k| t.basis_element(k)).collect();
    let proj = sq.projection_map(t, &basis);
    (sq.module().clone(), proj)
}

pub fn direct_sum(modules: &[FinModule]) -> Result<FinModule> {
    let Some(first) = modules.first() else {
        return Err(Error::Invalid("direct sum of no modules needs a ring".into()));
    };
    for m in modules {
        first.ring().check_same(m.ring())?;
    }
    Ok(FinModule::from_factors(
        first.ring(),
        modules.iter().flat_map(|m| m.factors().iter().copied()),
    ))
}

/// Builder for a map between direct sums, assembled block by block.
#[derive(Clone, Debug)]
pub struct BlockMap {
    source: FinModule,
    target: FinModule,
    src_offsets: Vec<usize>,
    tgt_offsets: Vec<usize>,
    matrix: ZnMatrix,
}

fn offsets(blocks: &[FinModule]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0;
    out.push(0);
    for b in blocks {
        acc += b.num_factors();
        out.push(acc);
    }
    out
}

impl BlockMap {
    pub fn new(ring: &crate::ring::CyclicRing, src_blocks: &[FinModule], tgt_blocks: &[FinModule]) -> Self {
        let source = FinModule::from_factors(ring, src_blocks.iter().flat_map(|m| m.factors().iter().copied()));
        let target = FinModule::from_factors(ring, tgt_blocks.iter().flat_map(|m| m.factors().iter().copied()));
        let matrix = ZnMatrix::zeros(ring.modulus(), target.num_factors(), source.num_factors());
        BlockMap {
            source,
            target,
            src_offsets: offsets(src_blocks),
            tgt_offsets: offsets(tgt_blocks),
            matrix,
        }
    }

    /// Add `f` into block (target block `ti`, source block `si`).
    pub fn add(&mut self, ti: usize, si: usize, f: &ModuleMap) {
        let (r0, c0) = (self.tgt_offsets[ti], self.src_offsets[si]);
        debug_assert_eq!(self.tgt_offsets[ti + 1] - r0, f.target().num_factors());
        debug_assert_eq!(self.src_offsets[si + 1] - c0, f.source().num_factors());
        let n = self.matrix.modulus();
        for i in 0..f.target().num_factors() {
            for j in 0..f.source().num_factors() {
                let cell = &mut self.matrix[(r0 + i, c0 + j)];
                *cell = crate::ring::add_mod(*cell, f.entry(i, j), n);
            }
        }
    }

    pub fn build(self) -> ModuleMap {
        ModuleMap::from_matrix(&self.source, &self.target, self.matrix)
    }
}

/// `M ⊗ N = ⊕_{j,k} Z/gcd(d_j, e_k)`, one factor per pair with gcd > 1,
/// pairs in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModule {
    pub module: FinModule,
    left: FinModule,
    right: FinModule,
    index: Vec<Option<usize>>,
}

impl TensorModule {
    pub fn left(&self) -> &FinModule {
        &self.left
    }

    pub fn right(&self) -> &FinModule {
        &self.right
    }

    /// Position of the factor `x_j ⊗ y_k`, if nonzero.
    pub fn position(&self, j: usize, k: usize) -> Option<usize> {
        self.index[j * self.right.num_factors() + k]
    }
}

pub fn tensor_modules(m: &FinModule, n: &FinModule) -> Result<TensorModule> {
    m.ring().check_same(n.ring())?;
    let mut factors = Vec::new();
    let mut index = Vec::with_capacity(m.num_factors() * n.num_factors());
    for &d in m.factors() {
        for &e in n.factors() {
            let g = gcd(d, e);
            if g > 1 {
                index.push(Some(factors.len()));
                factors.push(g);
            } else {
                index.push(None);
            }
        }
    }
    Ok(TensorModule {
        module: FinModule::from_factors(m.ring(), factors),
        left: m.clone(),
        right: n.clone(),
        index,
    })
}

/// `f ⊗ g : src -> tgt` where `src = M ⊗ N`, `tgt = M' ⊗ N'`.
pub fn tensor_maps(f: &ModuleMap, g: &ModuleMap, src: &TensorModule, tgt: &TensorModule) -> ModuleMap {
    let n = f.source().ring().modulus();
    let mut matrix = ZnMatrix::zeros(n, tgt.module.num_factors(), src.module.num_factors());
    for j in 0..src.left.num_factors() {
        for k in 0..src.right.num_factors() {
            let Some(col) = src.position(j, k) else { continue };
            for a in 0..tgt.left.num_factors() {
                let fa = f.entry(a, j);
                if fa == 0 {
                    continue;
                }
                for b in 0..tgt.right.num_factors() {
                    let Some(row) = tgt.position(a, b) else { continue };
                    let v = mul_mod(fa, g.entry(b, k), n);
                    let m = tgt.module.factors()[row];
                    matrix[(row, col)] = crate::ring::add_mod(matrix[(row, col)], v % m, m);
                }
            }
        }
    }
    ModuleMap::from_matrix(&src.module, &tgt.module, matrix)
}

/// `Hom(M, N) = ⊕_{j,k} Z/gcd(d_j, e_k)`; the generator for `(j, k)` sends
/// the j-th generator of M to `(e_k / gcd) y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomModule {
    pub module: FinModule,
    source: FinModule,
    target: FinModule,
    index: Vec<Option<usize>>,
}

impl HomModule {
    pub fn hom_source(&self) -> &FinModule {
        &self.source
    }

    pub fn hom_target(&self) -> &FinModule {
        &self.target
    }

    fn position(&self, j: usize, k: usize) -> Option<usize> {
        self.index[j * self.target.num_factors() + k]
    }

    /// Coordinates of the homomorphism `f : M -> N`.
    pub fn element_of(&self, f: &ModuleMap) -> Vec<u64> {
        debug_assert_eq!(f.source(), &self.source);
        debug_assert_eq!(f.target(), &self.target);
        let mut out = self.module.zero_element();
        for (j, &d) in self.source.factors().iter().enumerate() {
            for (k, &e) in self.target.factors().iter().enumerate() {
                let Some(pos) = self.position(j, k) else {
                    debug_assert_eq!(f.entry(k, j), 0);
                    continue;
                };
                let step = e / gcd(d, e);
                let v = f.entry(k, j);
                debug_assert_eq!(v % step, 0);
                out[pos] = v / step;
            }
        }
        out
    }

    /// The homomorphism with coordinates `phi`.
    pub fn to_map(&self, phi: &[u64]) -> ModuleMap {
        let n = self.source.ring().modulus();
        let mut matrix = ZnMatrix::zeros(n, self.target.num_factors(), self.source.num_factors());
        for (j, &d) in self.source.factors().iter().enumerate() {
            for (k, &e) in self.target.factors().iter().enumerate() {
                if let Some(pos) = self.position(j, k) {
                    matrix[(k, j)] = mul_mod(phi[pos], e / gcd(d, e), e);
                }
            }
        }
        ModuleMap::from_matrix(&self.source, &self.target, matrix)
    }

    /// The map `Hom(M, N) -> cod` induced by `f ↦ transform(f)`.
    pub fn induced(&self, cod: &HomModule, transform: impl Fn(&ModuleMap) -> ModuleMap) -> ModuleMap {
        let cols: Vec<Vec<u64>> = (0..self.module.num_factors())
            .map(|i| cod.element_of(&transform(&self.to_map(&self.module.basis_element(i)))))
            .collect();
        ModuleMap::from_columns(&self.module, &cod.module, &cols)
    }
}

pub fn hom_module(m: &FinModule, n: &FinModule) -> Result<HomModule> {
    m.ring().check_same(n.ring())?;
    let mut factors = Vec::new();
    let mut index = Vec::with_capacity(m.num_factors() * n.num_factors());
    for &d in m.factors() {
        for &e in n.factors() {
            let g = gcd(d, e);
            if g > 1 {
                index.push(Some(factors.len()));
                factors.push(g);
            } else {
                index.push(None);
            }
        }
    }
    Ok(HomModule {
        module: FinModule::from_factors(m.ring(), factors),
        source: m.clone(),
        target: n.clone(),
        index,
    })
}

pub fn support(m: &FinModule) -> SpecSubset {
    SpecSubset::from_primes(
        m.ring()
            .prime_list()
            .into_iter()
            .filter(|&p| m.factors().iter().any(|&d| d % p == 0))
            .collect(),
    )
}

/// The P-torsion part of a module: a direct summand with inclusion and the
/// retraction given by the CRT idempotent `e_P`.
#[derive(Clone, Debug)]
pub struct TorsionPart {
    pub module: FinModule,
    pub inclusion: ModuleMap,
    pub retraction: ModuleMap,
}

fn primary_part(d: u64, subset: &SpecSubset) -> u64 {
    subset
        .primes()
        .iter()
        .filter(|&&p| d % p == 0)
        .map(|&p| p.pow(valuation(d, p)))
        .product()
}

/// Largest submodule supported in `subset`.
pub fn torsion_part(m: &FinModule, subset: &SpecSubset) -> TorsionPart {
    let ring = m.ring();
    let n = ring.modulus();
    let e = subset_idempotent(ring, subset);
    let kept: Vec<(usize, u64, u64)> = m
        .factors()
        .iter()
        .enumerate()
        .map(|(j, &d)| (j, d, primary_part(d, subset)))
        .filter(|&(_, _, dp)| dp > 1)
        .collect();
    let module = FinModule::from_factors(ring, kept.iter().map(|&(_, _, dp)| dp));
    let mut incl = ZnMatrix::zeros(n, m.num_factors(), kept.len());
    let mut retr = ZnMatrix::zeros(n, kept.len(), m.num_factors());
    for (t, &(j, d, dp)) in kept.iter().enumerate() {
        let cofactor = d / dp;
        incl[(j, t)] = cofactor;
        let ej = e % d;
        debug_assert_eq!(ej % cofactor, 0);
        retr[(t, j)] = (ej / cofactor) % dp;
    }
    TorsionPart {
        inclusion: ModuleMap::from_matrix(&module, m, incl),
        retraction: ModuleMap::from_matrix(m, &module, retr),
        module,
    }
}

/// Injective modules over Z/n are sums of the full primary parts `Z/p^{e_p}`:
/// a factor `Z/d` is injective when every primary component of `d` is full.
pub fn is_injective(m: &FinModule) -> bool {
    m.factors().iter().all(|&d| {
        crate::ring::factorize(d)
            .into_iter()
            .all(|(p, e)| m.ring().exponent(p) == Some(e))
    })
}

/// `E(Z/d) = ⊕_{p | d} Z/p^{e_p}`, with `1 ↦ p^{e_p - v_p(d)}` in each
/// component.
pub fn injective_envelope(m: &FinModule) -> (FinModule, ModuleMap) {
    let ring = m.ring();
    let n = ring.modulus();
    let mut factors = Vec::new();
    let mut entries = Vec::new();
    for (j, &d) in m.factors().iter().enumerate() {
        for &(p, e) in ring.primes() {
            if d % p == 0 {
                let v = valuation(d, p);
                entries.push((factors.len(), j, p.pow(e - v)));
                factors.push(p.pow(e));
            }
        }
    }
    let env = FinModule::from_factors(ring, factors);
    let mut matrix = ZnMatrix::zeros(n, env.num_factors(), m.num_factors());
    for (i, j, x) in entries {
        matrix[(i, j)] = x;
    }
    let iota = ModuleMap::from_matrix(m, &env, matrix);
    (env, iota)
}

/// Essential monomorphism check: `ι` injective and the socle of the target
/// contained in the image of `ι`.
pub fn is_essential(iota: &ModuleMap) -> bool {
    if !iota.is_injective() {
        return false;
    }
    let e = iota.target();
    let im = image_subquotient(iota);
    e.factors().iter().enumerate().all(|(k, &d)| {
        e.ring().prime_list().into_iter().filter(|&p| d % p == 0).all(|p| {
            let mut s = e.zero_element();
            s[k] = d / p;
            im.contains(&s)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CyclicRing;

    fn z(n: u64) -> CyclicRing {
        CyclicRing::new(n).unwrap()
    }

    fn module(r: &CyclicRing, f: &[u64]) -> FinModule {
        FinModule::new(r, f.to_vec()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let r = z(12);
        let m = module(&r, &[12]);
        let (k, incl) = kernel(&ModuleMap::scalar(&m, 6));
        assert_eq!(k.factors(), &[6]);
        assert_eq!(incl.entry(0, 0) % 2, 0);
        let img: Vec<u64> = (0..6).map(|x| incl.apply(&[x])[0]).collect();
        let mut img_sorted = img.clone();
        img_sorted.sort();
        assert_eq!(img_sorted, vec![0, 2, 4, 6, 8, 10]);

        let z4 = module(&r, &[4]);
        assert!(kernel(&ModuleMap::identity(&z4)).0.is_zero());
        let (k, incl) = kernel(&ModuleMap::zero(&z4, &z4));
        assert_eq!(k.factors(), &[4]);
        assert!(incl.is_iso());
    }

    #[test]
    fn cokernel_examples() {
        let r = z(12);
        let z4 = module(&r, &[4]);
        let (c, proj) = cokernel(&ModuleMap::scalar(&z4, 2));
        assert_eq!(c.factors(), &[2]);
        assert!(proj.compose(&ModuleMap::scalar(&z4, 2)).unwrap().is_zero());
        assert!(cokernel(&ModuleMap::identity(&z4)).0.is_zero());
        let zero = FinModule::zero(&r);
        let (c, proj) = cokernel(&ModuleMap::zero(&zero, &z4));
        assert_eq!(c.factors(), &[4]);
        assert!(proj.is_iso());
    }

    #[test]
    fn subquotient_examples() {
        let r = z(12);
        let m = module(&r, &[12]);
        let h = super::super::subquotient(&ModuleMap::scalar(&m, 2), &ModuleMap::scalar(&m, 6)).unwrap();
        assert!(h.module().is_zero());
        let z4 = module(&r, &[4]);
        let h = super::super::subquotient(&ModuleMap::zero(&z4, &z4), &ModuleMap::zero(&z4, &z4)).unwrap();
        assert_eq!(h.module().factors(), &[4]);
        let h = super::super::subquotient(&ModuleMap::scalar(&m, 4), &ModuleMap::scalar(&m, 3)).unwrap();
        assert!(h.module().is_zero());
        assert_eq!(
            super::super::subquotient(&ModuleMap::scalar(&m, 2), &ModuleMap::scalar(&m, 2)).unwrap_err(),
            Error::CompositeNonzero
        );
    }

    #[test]
    fn tensor_and_hom_examples() {
        let r = z(12);
        let z4 = module(&r, &[4]);
        let z6 = module(&r, &[6]);
        let z3 = module(&r, &[3]);
        let rr = FinModule::free(&r, 1);
        assert_eq!(tensor_modules(&z4, &z6).unwrap().module.factors(), &[2]);
        assert!(tensor_modules(&rr, &z6).unwrap().module.is_isomorphic(&z6));
        assert!(tensor_modules(&z4, &z3).unwrap().module.is_zero());
        assert_eq!(hom_module(&z4, &z6).unwrap().module.factors(), &[2]);
        assert!(hom_module(&rr, &z6).unwrap().module.is_isomorphic(&z6));
        assert!(hom_module(&z3, &z4).unwrap().module.is_zero());
        let other = CyclicRing::new(6).unwrap();
        assert!(tensor_modules(&z4, &FinModule::free(&other, 1)).is_err());
    }

    #[test]
    fn hom_round_trip() {
        let r = z(12);
        let m = module(&r, &[4, 6]);
        let n = module(&r, &[6, 12]);
        let h = hom_module(&m, &n).unwrap();
        for i in 0..h.module.num_factors() {
            let e = h.module.basis_element(i);
            assert_eq!(h.element_of(&h.to_map(&e)), e);
        }
    }

    #[test]
    fn support_examples() {
        let r = z(12);
        assert_eq!(support(&module(&r, &[6])).primes(), &[2, 3]);
        assert!(support(&FinModule::zero(&r)).is_empty());
        assert_eq!(support(&module(&r, &[4, 4])).primes(), &[2]);
    }

    #[test]
    fn torsion_examples() {
        let r = z(12);
        let z6 = module(&r, &[6]);
        let t = torsion_part(&z6, &SpecSubset::from_primes(vec![2]));
        assert_eq!(t.module.factors(), &[2]);
        assert_eq!(t.inclusion.apply(&[1]), vec![3]);
        assert!(t.retraction.compose(&t.inclusion).unwrap() == ModuleMap::identity(&t.module));
        let m = module(&r, &[4, 6, 12]);
        let all = torsion_part(&m, &r.spec());
        assert_eq!(all.module, m);
        assert!(torsion_part(&m, &SpecSubset::empty()).module.is_zero());
    }

    #[test]
    fn envelope_examples() {
        let r = z(12);
        let (e, iota) = injective_envelope(&module(&r, &[2]));
        assert_eq!(e.factors(), &[4]);
        assert_eq!(iota.entry(0, 0), 2);
        assert!(is_essential(&iota));
        let (e, iota) = injective_envelope(&FinModule::free(&r, 1));
        assert_eq!(e.factors(), &[4, 3]);
        assert!(iota.is_iso());
        let (e, _) = injective_envelope(&FinModule::zero(&r));
        assert!(e.is_zero());
        // a non-essential mono: Z/2 -> Z/4 + Z/4 into one summand
        let z2 = module(&r, &[2]);
        let e2 = module(&r, &[4, 4]);
        let f = ModuleMap::new(&z2, &e2, &[vec![2], vec![0]]).unwrap();
        assert!(!is_essential(&f));
        assert!(is_injective(&e2));
        assert!(!is_injective(&z2));
    }
}
