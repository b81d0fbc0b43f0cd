//! Exact abelian group computations over `Z` and `F_p`.

pub mod fp;
pub mod modular;
pub mod presented;
pub mod snf;
pub mod structure;

pub use modular::{ModularCokernel, ModularLattice};
pub use presented::{multiplier_abelian, structure_of_subquotient, PresentedAbelianGroup, SparseRow};
pub use snf::{smith_normal_form, IntegerLattice, SnfResult};
pub use structure::AbelianStructure;

/// Dimension of the `F_p`-span of `rows`.
pub fn fp_span_dim(rows: &[Vec<u32>], p: u32) -> usize {
    fp::span_dim(rows, p)
}
