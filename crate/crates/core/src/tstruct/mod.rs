//! Thomason filtrations, membership oracles for the t-structures they
//! classify, truncation triangles and the generator/filtration maps.

mod filtration;
mod ops;
mod oracle;

pub use filtration::{classify_boundedness, Boundedness, BoundednessKind, Cutoff, ThomasonFiltration};
pub use ops::{
    coresolve_in_coaisle, filtration_of_generators, generators_of, in_aisle, in_co_t_coaisle, in_coaisle_cech,
    in_coaisle_hom, in_coaisle_reduced, stalk_hom_check, torsion_complex, truncate_t, AisleReport,
    CoresolutionStep, Evidence, StalkHomCheck, TorsionComplex, TruncationTriangle,
};
pub use oracle::{
    decide_profile, CechOracle, DualHomOracle, HomOracle, Key, KoszulTensorOracle, MembershipOracle,
    OracleRegistry, OracleSide, Profile, ReducedOracle, SupportOracle, Verdict,
};

#[cfg(test)]
mod tests;
