use std::collections::BTreeMap;

use super::{range_union, ChainMap, Complex, GradedModule};
use crate::error::Result;
use crate::module::{
    hom_module, kernel_lattice, kernel_subquotient, subquotient, tensor_maps, tensor_modules, BlockMap,
    FinModule, HomModule, ModuleMap, Subquotient, TensorModule,
};
use crate::ring::CyclicRing;

fn signed(f: &ModuleMap, k: i64) -> ModuleMap {
    if k.rem_euclid(2) == 0 {
        f.clone()
    } else {
        f.neg()
    }
}

/// `X[k]`: `X[k]^n = X^{n+k}` with differential `(-1)^k d`.
pub fn shift(x: &Complex, k: i64) -> Complex {
    Complex {
        ring: x.ring.clone(),
        min_degree: if x.is_zero() { 0 } else { x.min_degree - k },
        coords: x.coords.clone(),
        diffs: x.diffs.iter().map(|d| signed(d, k)).collect(),
    }
}

/// The mapping cone with its triangle maps `Y -> cone(f) -> X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `cone(f)^n = X^{n+1} ⊕ Y^n`, `d = [[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let blocks = |n: i64| [x.coord(n + 1), y.coord(n)];
    let sum = |n: i64| FinModule::from_factors(ring, blocks(n).iter().flat_map(|m| m.factors().to_vec()));
    let range = range_union(x.range().map(|(a, b)| (a - 1, b - 1)), y.range());
    let complex = match range {
        None => Complex::zero(ring),
        Some((lo, hi)) => Complex::from_fn(ring, lo, hi, sum, |n, _, _| {
            let mut b = BlockMap::new(ring, &blocks(n), &blocks(n + 1));
            b.add(0, 0, &x.diff(n + 1).neg());
            b.add(1, 0, &f.component(n + 1));
            b.add(1, 1, &y.diff(n));
            b.build()
        }),
    };
    let inclusion = ChainMap::from_fn(y, &complex, |n| {
        let mut b = BlockMap::new(ring, &[y.coord(n)], &blocks(n));
        b.add(1, 0, &ModuleMap::identity(&y.coord(n)));
        b.build()
    });
    let x1 = shift(x, 1);
    let projection = ChainMap::from_fn(&complex, &x1, |n| {
        let mut b = BlockMap::new(ring, &blocks(n), &[x.coord(n + 1)]);
        b.add(0, 0, &ModuleMap::identity(&x.coord(n + 1)));
        b.build()
    });
    Cone {
        complex,
        inclusion,
        projection,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Degrees at or below the cut.
    Le,
    /// Degrees strictly above the cut.
    Gt,
}

/// A truncation with its comparison map: `τ^{≤n} X -> X` or `X -> τ^{>n} X`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub complex: Complex,
    pub map: ChainMap,
}

/// Soft truncation: `τ^{≤n} X = (… -> X^{n-1} -> ker d^n -> 0)` or the
/// quotient `τ^{>n} X = (0 -> X^n / ker d^n -> X^{n+1} -> …)`.
pub fn soft_truncate(x: &Complex, n: i64, side: Side) -> Truncation {
    let ring = x.ring();
    let Some((lo, hi)) = x.range() else {
        let zero = Complex::zero(ring);
        return Truncation {
            map: ChainMap::zero(&zero, &zero),
            complex: zero,
        };
    };
    match side {
        Side::Le => {
            let z = kernel_subquotient(&x.diff(n));
            let coord = |k: i64| if k == n { z.module().clone() } else { x.coord(k) };
            let complex = Complex::from_fn(ring, lo, hi.min(n), coord, |k, src, tgt| {
                if k + 1 == n {
                    let d = x.diff(k);
                    let cols: Vec<Vec<u64>> = (0..src.num_factors()).map(|j| d.matrix().column(j)).collect();
                    z.projection_map(src, &cols)
                } else {
                    debug_assert!(tgt == &x.coord(k + 1));
                    x.diff(k)
                }
            });
            let map = ChainMap::from_fn(&complex, x, |k| {
                if k == n {
                    z.generator_map()
                } else if k < n {
                    ModuleMap::identity(&x.coord(k))
                } else {
                    ModuleMap::zero(&complex.coord(k), &x.coord(k))
                }
            });
            Truncation { complex, map }
        }
        Side::Gt => {
            let xn = x.coord(n);
            let basis: Vec<Vec<u64>> = (0..xn.num_factors()).map(|j| xn.basis_element(j)).collect();
            let q = Subquotient::build(&xn, &basis, &kernel_lattice(&x.diff(n)));
            let coord = |k: i64| if k == n { q.module().clone() } else { x.coord(k) };
            let complex = Complex::from_fn(ring, lo.max(n), hi, coord, |k, src, tgt| {
                if k == n {
                    let d = x.diff(n);
                    let cols: Vec<Vec<u64>> = q.generators().iter().map(|g| d.apply(g)).collect();
                    ModuleMap::from_columns(src, tgt, &cols)
                } else {
                    x.diff(k)
                }
            });
            let map = ChainMap::from_fn(x, &complex, |k| {
                if k == n {
                    q.projection_map(&xn, &basis)
                } else if k > n {
                    ModuleMap::identity(&x.coord(k))
                } else {
                    ModuleMap::zero(&x.coord(k), &complex.coord(k))
                }
            });
            Truncation { complex, map }
        }
    }
}

/// Brutal truncation: keep the coordinates at or below `n` (`Le`) or
/// strictly above `n` (`Gt`).
pub fn brutal_truncate(x: &Complex, n: i64, side: Side) -> Complex {
    let ring = x.ring();
    let Some((lo, hi)) = x.range() else {
        return Complex::zero(ring);
    };
    let (a, b) = match side {
        Side::Le => (lo, hi.min(n)),
        Side::Gt => (lo.max(n + 1), hi),
    };
    Complex::from_fn(ring, a, b, |k| x.coord(k), |k, _, _| x.diff(k))
}

/// Block layout of `(X ⊗ Y)^m = ⊕_i X^i ⊗ Y^{m-i}`.
struct TensorLayout {
    blocks: BTreeMap<i64, Vec<(i64, TensorModule)>>,
}

impl TensorLayout {
    fn new(x: &Complex, y: &Complex) -> Result<Option<(i64, i64, TensorLayout)>> {
        x.ring().check_same(y.ring())?;
        let (Some((xl, xh)), Some((yl, yh))) = (x.range(), y.range()) else {
            return Ok(None);
        };
        let mut blocks = BTreeMap::new();
        for m in xl + yl..=xh + yh {
            let mut row = Vec::new();
            for i in xl.max(m - yh)..=xh.min(m - yl) {
                row.push((i, tensor_modules(&x.coord(i), &y.coord(m - i))?));
            }
            blocks.insert(m, row);
        }
        Ok(Some((xl + yl, xh + yh, TensorLayout { blocks })))
    }

    fn modules(&self, m: i64) -> Vec<FinModule> {
        self.blocks
            .get(&m)
            .map(|row| row.iter().map(|(_, t)| t.module.clone()).collect())
            .unwrap_or_default()
    }

    fn find(&self, m: i64, i: i64) -> Option<(usize, &TensorModule)> {
        self.blocks
            .get(&m)?
            .iter()
            .enumerate()
            .find(|(_, (j, _))| *j == i)
            .map(|(pos, (_, t))| (pos, t))
    }
}

fn sum_of(ring: &CyclicRing, blocks: &[FinModule]) -> FinModule {
    FinModule::from_factors(ring, blocks.iter().flat_map(|m| m.factors().to_vec()))
}

/// `(X ⊗ Y)^m = ⊕_i X^i ⊗ Y^{m-i}` with `d = d_X ⊗ 1 + (-1)^i 1 ⊗ d_Y`.
pub fn tensor_complexes(x: &Complex, y: &Complex) -> Result<Complex> {
    let ring = x.ring();
    let Some((lo, hi, layout)) = TensorLayout::new(x, y)? else {
        return Ok(Complex::zero(ring));
    };
    Ok(Complex::from_fn(
        ring,
        lo,
        hi,
        |m| sum_of(ring, &layout.modules(m)),
        |m, _, _| {
            let mut b = BlockMap::new(ring, &layout.modules(m), &layout.modules(m + 1));
            for (pos, (i, t)) in layout.blocks[&m].iter().enumerate() {
                let j = m - i;
                if let Some((tpos, tt)) = layout.find(m + 1, i + 1) {
                    let f = tensor_maps(&x.diff(*i), &ModuleMap::identity(&y.coord(j)), t, tt);
                    b.add(tpos, pos, &f);
                }
                if let Some((tpos, tt)) = layout.find(m + 1, *i) {
                    let g = tensor_maps(&ModuleMap::identity(&x.coord(*i)), &y.diff(j), t, tt);
                    b.add(tpos, pos, &signed(&g, *i));
                }
            }
            b.build()
        },
    ))
}

/// `f ⊗ g : X ⊗ Y -> X' ⊗ Y'`, with source and target laid out as by
/// [`tensor_complexes`].
pub fn tensor_chain_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let ring = f.source().ring();
    let source = tensor_complexes(f.source(), g.source())?;
    let target = tensor_complexes(f.target(), g.target())?;
    let src_layout = TensorLayout::new(f.source(), g.source())?;
    let tgt_layout = TensorLayout::new(f.target(), g.target())?;
    Ok(ChainMap::from_fn(&source, &target, |m| {
        let (Some((_, _, sl)), Some((_, _, tl))) = (&src_layout, &tgt_layout) else {
            return ModuleMap::zero(&source.coord(m), &target.coord(m));
        };
        let mut b = BlockMap::new(ring, &sl.modules(m), &tl.modules(m));
        if let Some(row) = sl.blocks.get(&m) {
            for (pos, (i, t)) in row.iter().enumerate() {
                if let Some((tpos, tt)) = tl.find(m, *i) {
                    b.add(tpos, pos, &tensor_maps(&f.component(*i), &g.component(m - i), t, tt));
                }
            }
        }
        b.build()
    }))
}

/// `Hom•(X, Y)` with its block layout `Hom^m = ∏_i Hom(X^i, Y^{i+m})`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: Complex,
    source: Complex,
    target: Complex,
    blocks: BTreeMap<i64, Vec<(i64, HomModule)>>,
}

impl HomComplex {
    fn modules(&self, m: i64) -> Vec<FinModule> {
        self.blocks
            .get(&m)
            .map(|row| row.iter().map(|(_, h)| h.module.clone()).collect())
            .unwrap_or_default()
    }

    fn find(&self, m: i64, i: i64) -> Option<usize> {
        self.blocks.get(&m)?.iter().position(|(j, _)| *j == i)
    }

    /// Split a degree-`m` element into its components `X^i -> Y^{i+m}`.
    pub fn components_of(&self, m: i64, element: &[u64]) -> BTreeMap<i64, ModuleMap> {
        let mut out = BTreeMap::new();
        let mut offset = 0;
        for (i, h) in self.blocks.get(&m).into_iter().flatten() {
            let len = h.module.num_factors();
            out.insert(*i, h.to_map(&element[offset..offset + len]));
            offset += len;
        }
        out
    }

    /// A degree-`m` cycle is a chain map `X -> Y[m]` with the same
    /// components.
    pub fn chain_map_of(&self, m: i64, element: &[u64]) -> ChainMap {
        let comps = self.components_of(m, element);
        let target = shift(&self.target, m);
        ChainMap::from_fn(&self.source, &target, |i| {
            comps
                .get(&i)
                .cloned()
                .unwrap_or_else(|| ModuleMap::zero(&self.source.coord(i), &target.coord(i)))
        })
    }

    /// The degree-`m` element with components `f(i) : X^i -> Y^{i+m}`.
    pub fn element_of(&self, m: i64, f: impl Fn(i64) -> ModuleMap) -> Vec<u64> {
        self.blocks
            .get(&m)
            .into_iter()
            .flatten()
            .flat_map(|(i, h)| h.element_of(&f(*i)))
            .collect()
    }
}

/// `Hom^m = ∏_i Hom(X^i, Y^{i+m})`, `d(f) = d_Y f - (-1)^m f d_X`.
pub fn hom_complex(x: &Complex, y: &Complex) -> Result<HomComplex> {
    x.ring().check_same(y.ring())?;
    let ring = x.ring();
    let (Some((xl, xh)), Some((yl, yh))) = (x.range(), y.range()) else {
        return Ok(HomComplex {
            complex: Complex::zero(ring),
            source: x.clone(),
            target: y.clone(),
            blocks: BTreeMap::new(),
        });
    };
    let (lo, hi) = (yl - xh, yh - xl);
    let mut blocks = BTreeMap::new();
    for m in lo..=hi {
        let mut row = Vec::new();
        for i in xl.max(yl - m)..=xh.min(yh - m) {
            row.push((i, hom_module(&x.coord(i), &y.coord(i + m))?));
        }
        blocks.insert(m, row);
    }
    let mut hc = HomComplex {
        complex: Complex::zero(ring),
        source: x.clone(),
        target: y.clone(),
        blocks,
    };
    hc.complex = Complex::from_fn(
        ring,
        lo,
        hi,
        |m| sum_of(ring, &hc.modules(m)),
        |m, _, _| {
            let mut b = BlockMap::new(ring, &hc.modules(m), &hc.modules(m + 1));
            for (pos, (i, h)) in hc.blocks[&m].iter().enumerate() {
                let i = *i;
                if let Some(tpos) = hc.find(m + 1, i) {
                    let cod = &hc.blocks[&(m + 1)][tpos].1;
                    let dy = y.diff(i + m);
                    b.add(tpos, pos, &h.induced(cod, |g| dy.compose(g).expect("composable")));
                }
                if let Some(tpos) = hc.find(m + 1, i - 1) {
                    let cod = &hc.blocks[&(m + 1)][tpos].1;
                    let dx = x.diff(i - 1);
                    let f = h.induced(cod, |g| g.compose(&dx).expect("composable"));
                    b.add(tpos, pos, &signed(&f, m + 1));
                }
            }
            b.build()
        },
    );
    Ok(hc)
}

/// `H^k(X) = ker d^k / im d^{k-1}` with generator lifts and coordinates.
pub fn cohomology_at(x: &Complex, k: i64) -> Subquotient {
    subquotient(&x.diff(k - 1), &x.diff(k)).expect("consecutive differentials compose to zero")
}

pub fn cohomology(x: &Complex) -> GradedModule {
    let mut out = GradedModule::new(x.ring());
    if let Some((lo, hi)) = x.range() {
        for k in lo..=hi {
            out.insert(k, cohomology_at(x, k).module().clone());
        }
    }
    out
}

/// `H^k(f) : H^k(X) -> H^k(Y)` in canonical coordinates.
pub fn induced_map(f: &ChainMap, k: i64) -> ModuleMap {
    let hx = cohomology_at(f.source(), k);
    let hy = cohomology_at(f.target(), k);
    let fk = f.component(k);
    let cols: Vec<Vec<u64>> = hx
        .generators()
        .iter()
        .map(|g| hy.project(&fk.apply(g)).expect("chain maps send cycles to cycles"))
        .collect();
    ModuleMap::from_columns(hx.module(), hy.module(), &cols)
}

/// `⊕_i X_i` with its inclusions and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub complex: Complex,
    pub inclusions: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

pub fn direct_sum_complexes(ring: &CyclicRing, xs: &[Complex]) -> Result<DirectSum> {
    for x in xs {
        ring.check_same(x.ring())?;
    }
    let range = xs.iter().fold(None, |acc, x| range_union(acc, x.range()));
    let blocks = |k: i64| -> Vec<FinModule> { xs.iter().map(|x| x.coord(k)).collect() };
    let complex = match range {
        None => Complex::zero(ring),
        Some((lo, hi)) => Complex::from_fn(
            ring,
            lo,
            hi,
            |k| sum_of(ring, &blocks(k)),
            |k, _, _| {
                let mut b = BlockMap::new(ring, &blocks(k), &blocks(k + 1));
                for (i, x) in xs.iter().enumerate() {
                    b.add(i, i, &x.diff(k));
                }
                b.build()
            },
        ),
    };
    let inclusions = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            ChainMap::from_fn(x, &complex, |k| {
                let mut b = BlockMap::new(ring, &[x.coord(k)], &blocks(k));
                b.add(i, 0, &ModuleMap::identity(&x.coord(k)));
                b.build()
            })
        })
        .collect();
    let projections = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            ChainMap::from_fn(&complex, x, |k| {
                let mut b = BlockMap::new(ring, &blocks(k), &[x.coord(k)]);
                b.add(0, i, &ModuleMap::identity(&x.coord(k)));
                b.build()
            })
        })
        .collect();
    Ok(DirectSum {
        complex,
        inclusions,
        projections,
    })
}
