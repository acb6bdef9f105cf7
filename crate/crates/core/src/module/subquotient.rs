use super::{FinModule, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{kernel_generators, residue_snf, LinearSolver, ZnMatrix};

/// A subquotient `N / D` of an ambient module, with `D ⊆ N`, in canonical
/// invariant-factor form together with lifts of its generators and a
/// coordinate map from `N`.
///
/// Everything is computed over the free cover `R^s` of the ambient module:
/// `N` and `D` are lifted to submodules containing the ambient relations,
/// the relation module `{c : G c ∈ D}` of the generator matrix `G` of `N` is
/// diagonalized, and the diagonal gives the invariant factors.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: FinModule,
    module: FinModule,
    generators: Vec<Vec<u64>>,
    solver: LinearSolver,
    u_rel: ZnMatrix,
    kept: Vec<(usize, u64)>,
}

fn relation_columns(m: &FinModule) -> Vec<Vec<u64>> {
    let n = m.ring().modulus();
    m.factors()
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d != n)
        .map(|(j, &d)| {
            let mut v = m.zero_element();
            v[j] = d;
            v
        })
        .collect()
}

impl Subquotient {
    /// `numerator` and `denominator` are generating sets of submodules of
    /// `ambient`, given as elements. The caller guarantees
    /// `denominator ⊆ span(numerator)`.
    pub(crate) fn build(ambient: &FinModule, numerator: &[Vec<u64>], denominator: &[Vec<u64>]) -> Self {
        let n = ambient.ring().modulus();
        let s = ambient.num_factors();
        let relations = relation_columns(ambient);

        let mut g_cols: Vec<Vec<u64>> = numerator.iter().map(|x| ambient.reduce(x)).collect();
        g_cols.extend(relations.iter().cloned());
        let mut f_cols: Vec<Vec<u64>> = denominator.iter().map(|x| ambient.reduce(x)).collect();
        f_cols.extend(relations);

        let g_mat = ZnMatrix::from_columns(n, s, &g_cols);
        let neg_f = ZnMatrix::from_columns(n, s, &f_cols).neg();
        let g = g_cols.len();
        // relations among the numerator generators: c with G c ∈ D
        let rel: Vec<Vec<u64>> = kernel_generators(&g_mat.hcat(&neg_f))
            .into_iter()
            .map(|v| v[..g].to_vec())
            .filter(|c| c.iter().any(|&x| x != 0))
            .collect();
        let rel_mat = ZnMatrix::from_columns(n, g, &rel);
        let snf = residue_snf(&rel_mat);

        let mut kept = Vec::new();
        for i in 0..g {
            let delta = snf.diag.get(i).copied().unwrap_or(n);
            if delta != 1 {
                kept.push((i, delta));
            }
        }
        let lifts = g_mat.mul(&snf.u_inv);
        let generators = kept
            .iter()
            .map(|&(i, _)| ambient.reduce(&lifts.column(i)))
            .collect();
        let module = FinModule::from_factors(ambient.ring(), kept.iter().map(|&(_, d)| d));
        debug_assert!(module.is_canonical());
        Subquotient {
            ambient: ambient.clone(),
            module,
            generators,
            solver: LinearSolver::new(&g_mat),
            u_rel: snf.u,
            kept,
        }
    }

    pub fn ambient(&self) -> &FinModule {
        &self.ambient
    }

    /// The subquotient in canonical form.
    pub fn module(&self) -> &FinModule {
        &self.module
    }

    /// Lifts in the ambient module of the canonical generators.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Whether `x` lies in the numerator.
    pub fn contains(&self, x: &[u64]) -> bool {
        self.solver.solve(&self.ambient.reduce(x)).is_some()
    }

    /// Class of `x` in canonical coordinates; `None` when `x` is not in the
    /// numerator.
    pub fn project(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.solver.solve(&self.ambient.reduce(x))?;
        let y = self.u_rel.mul_vec(&c);
        Some(self.kept.iter().map(|&(i, d)| y[i] % d).collect())
    }

    /// The map from `source` whose columns project the given elements,
    /// each of which must lie in the numerator.
    pub(crate) fn projection_map(&self, source: &FinModule, images: &[Vec<u64>]) -> ModuleMap {
        let cols: Vec<Vec<u64>> = images
            .iter()
            .map(|x| self.project(x).expect("element lies in the numerator"))
            .collect();
        ModuleMap::from_columns(source, &self.module, &cols)
    }

    /// Inclusion-like map from the subquotient to the ambient module, valid
    /// when the denominator is zero.
    pub(crate) fn generator_map(&self) -> ModuleMap {
        ModuleMap::from_columns(&self.module, &self.ambient, &self.generators)
    }
}

/// Elements `x` of the source with `f(x) = 0`, lifted to the free cover.
pub(crate) fn kernel_lattice(f: &ModuleMap) -> Vec<Vec<u64>> {
    let n = f.source().ring().modulus();
    let s = f.source().num_factors();
    let t = f.target().num_factors();
    let mut diag = ZnMatrix::zeros(n, t, t);
    for (i, &e) in f.target().factors().iter().enumerate() {
        diag[(i, i)] = e % n;
    }
    let system = f.matrix().hcat(&diag.neg());
    kernel_generators(&system)
        .into_iter()
        .map(|v| v[..s].to_vec())
        .collect()
}

/// `ker(f_out) / im(f_in)`.
pub fn subquotient(f_in: &ModuleMap, f_out: &ModuleMap) -> Result<Subquotient> {
    if f_in.target() != f_out.source() {
        return Err(Error::Invalid("subquotient: maps are not composable".into()));
    }
    if !f_out.compose(f_in)?.is_zero() {
        return Err(Error::CompositeNonzero);
    }
    let images: Vec<Vec<u64>> = (0..f_in.source().num_factors())
        .map(|j| f_in.matrix().column(j))
        .collect();
    Ok(Subquotient::build(f_out.source(), &kernel_lattice(f_out), &images))
}
