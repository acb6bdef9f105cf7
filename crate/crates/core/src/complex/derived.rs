use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{cohomology_at, hom_complex, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::module::{image, kernel, BlockMap, FinModule, ModuleMap};

fn split_columns(cols: &[Vec<u64>], at: usize) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    cols.iter().map(|c| (c[..at].to_vec(), c[at..].to_vec())).unzip()
}

/// Free replacement built from the top degree down: `P^k` is a free cover of
/// `{(p, x) ∈ P^{k+1} ⊕ X^k : d p = 0, φ(p) = d x}`.
pub(crate) fn replace(x: &Complex, floor: i64) -> (Complex, ChainMap) {
    let ring = x.ring();
    let Some((_, hi)) = x.range() else {
        return (x.clone(), ChainMap::identity(x));
    };
    if floor > hi {
        let zero = Complex::zero(ring);
        return (zero.clone(), ChainMap::zero(&zero, x));
    }
    let zero = FinModule::zero(ring);
    let mut p_next = zero.clone();
    let mut d_next = ModuleMap::zero(&zero, &zero);
    let mut phi_next = ModuleMap::zero(&zero, &x.coord(hi + 1));
    // filled from the top; reversed at the end
    let mut coords = Vec::new();
    let mut diffs = Vec::new();
    let mut phis = Vec::new();
    for k in (floor..=hi).rev() {
        let xk = x.coord(k);
        let src = [p_next.clone(), xk.clone()];
        let tgt = [d_next.target().clone(), x.coord(k + 1)];
        let mut t = BlockMap::new(ring, &src, &tgt);
        t.add(0, 0, &d_next);
        t.add(1, 0, &phi_next);
        t.add(1, 1, &x.diff(k).neg());
        let (w, incl) = kernel(&t.build());
        let cover = FinModule::free(ring, w.num_factors());
        let cols: Vec<Vec<u64>> = (0..w.num_factors()).map(|j| incl.matrix().column(j)).collect();
        let (p_cols, x_cols) = split_columns(&cols, p_next.num_factors());
        let d = ModuleMap::from_columns(&cover, &p_next, &p_cols);
        let phi = ModuleMap::from_columns(&cover, &xk, &x_cols);
        coords.push(cover.clone());
        diffs.push(d.clone());
        phis.push(phi.clone());
        p_next = cover;
        d_next = d;
        phi_next = phi;
    }
    coords.reverse();
    phis.reverse();
    // diffs[i] is d^{hi-i}; the top one maps to zero and is dropped
    diffs.remove(0);
    diffs.reverse();
    let p = Complex::from_parts(ring, floor, coords, diffs);
    let map = ChainMap::from_fn(&p, x, |k| {
        if k >= floor && k <= hi {
            let f = &phis[(k - floor) as usize];
            ModuleMap::from_matrix(&p.coord(k), f.target(), f.matrix().clone())
        } else {
            ModuleMap::zero(&p.coord(k), &x.coord(k))
        }
    });
    (p, map)
}

/// Bounded complex of free modules in degrees `[floor, top(X)]` with a map
/// to `X` inducing isomorphisms on `H^i` for `i > floor`.
pub fn projective_replacement(x: &Complex, floor: i64) -> Result<(Complex, ChainMap)> {
    if let Some((lo, _)) = x.range() {
        if floor > lo {
            return Err(Error::FloorAboveWindow { floor, lowest: lo });
        }
    }
    Ok(replace(x, floor))
}

/// `Hom_D(X, Y[k])` for every `k` in `[k_lo, k_hi]`, from one replacement of
/// `X` with floor `inf(Y) - k_hi - 2` (no replacement when `X` is free).
pub fn hom_derived_range(x: &Complex, y: &Complex, k_lo: i64, k_hi: i64) -> Result<BTreeMap<i64, FinModule>> {
    x.ring().check_same(y.ring())?;
    let floor = y.range().map_or(0, |(lo, _)| lo - k_hi - 2);
    hom_derived_with_floor(x, y, k_lo, k_hi, floor)
}

/// As [`hom_derived_range`] with an explicit replacement floor; correct for
/// any floor at or below `inf(Y) - k_hi - 1`.
pub fn hom_derived_with_floor(
    x: &Complex,
    y: &Complex,
    k_lo: i64,
    k_hi: i64,
    floor: i64,
) -> Result<BTreeMap<i64, FinModule>> {
    x.ring().check_same(y.ring())?;
    let mut out = BTreeMap::new();
    if x.is_zero() || y.is_zero() {
        for k in k_lo..=k_hi {
            out.insert(k, FinModule::zero(x.ring()));
        }
        return Ok(out);
    }
    let p = if x.is_free() { x.clone() } else { replace(x, floor).0 };
    let h = hom_complex(&p, y)?;
    for k in k_lo..=k_hi {
        out.insert(k, cohomology_at(&h.complex, k).module().clone());
    }
    Ok(out)
}

/// `Hom_D(X, Y[k])`.
pub fn hom_derived(x: &Complex, y: &Complex, k: i64) -> Result<FinModule> {
    Ok(hom_derived_range(x, y, k, k)?.remove(&k).expect("degree in range"))
}

/// `S* = Hom•(S, R[0])` for a complex of free modules.
pub fn compact_dual(s: &Complex) -> Result<Complex> {
    if let Some((lo, hi)) = s.range() {
        if let Some(k) = (lo..=hi).find(|&k| !s.coord(k).is_free()) {
            return Err(Error::NotFree { degree: k });
        }
    }
    let unit = Complex::stalk(&FinModule::free(s.ring(), 1), 0);
    Ok(hom_complex(s, &unit)?.complex)
}

/// Colimit of `M_0 -> M_1 -> …` from a finite window.
///
/// With `L` the last index and `h = L / 2`, the stable index is the least
/// `N ≤ h` such that `|im(M_N -> M_l)|` is constant for `l ∈ [h, L]` and
/// `|im(M_j -> M_L)| = |im(M_N -> M_L)|` for `j ∈ [N, h]`; the colimit is
/// then `im(M_N -> M_L)`.
pub fn tower_colimit(ms: &[FinModule], fs: &[ModuleMap]) -> Result<FinModule> {
    if ms.is_empty() || fs.len() + 1 != ms.len() {
        return Err(Error::Invalid(format!(
            "tower of {} modules needs {} maps, got {}",
            ms.len(),
            ms.len().saturating_sub(1),
            fs.len()
        )));
    }
    for (i, f) in fs.iter().enumerate() {
        if f.source() != &ms[i] || f.target() != &ms[i + 1] {
            return Err(Error::Invalid(format!("tower map {i} does not match its modules")));
        }
    }
    let last = ms.len() - 1;
    let half = last / 2;
    // composite[j][l - j] : M_j -> M_l
    let composite: Vec<Vec<ModuleMap>> = (0..=last)
        .map(|j| {
            let mut row = vec![ModuleMap::identity(&ms[j])];
            for f in &fs[j..] {
                let next = f.compose(row.last().unwrap()).expect("tower maps compose");
                row.push(next);
            }
            row
        })
        .collect();
    let size = |j: usize, l: usize| -> BigUint { image(&composite[j][l - j]).0.order() };
    for n in 0..=half {
        let top = size(n, last);
        let tail_constant = (half.max(n)..=last).all(|l| size(n, l) == top);
        let absorbs = (n..=half).all(|j| size(j, last) == top);
        if tail_constant && absorbs {
            return Ok(image(&composite[n][last - n]).0);
        }
    }
    Err(Error::TowerUnstable { len: ms.len() })
}
