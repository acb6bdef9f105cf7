//! Exact linear algebra: matrices over Z/n with their Smith normal form, and
//! integer Smith normal form.

pub mod integer_snf;
pub mod matrix;
pub mod residue_snf;

pub use integer_snf::{smith_normal_form, IntMatrix, IntegerSnf};
pub use matrix::ZnMatrix;
pub use residue_snf::{kernel_generators, residue_snf, LinearSolver, ResidueSnf};
