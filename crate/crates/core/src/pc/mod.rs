//! Class-2 power-commutator presentations with elementary abelian `G'` and `G/G'`.

pub mod element;
pub mod families;
pub mod presentation;
pub mod subgroup;
pub mod text;

pub use element::{elements, GroupElement};
pub use presentation::{pair_index, pairs, PcPresentation};
pub use subgroup::{
    center, derived_subgroup, frattini, power_subgroup, quotient_by_central, structure_report, StructureReport,
    SubgroupDescription, SubgroupKind,
};
