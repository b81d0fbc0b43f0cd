//! Nonabelian exterior and tensor squares of class-2 groups.

pub mod center;
pub mod expand;
pub mod oracle;
pub mod square;
pub mod symbols;

pub use center::{
    capability_report, capability_report_with, exterior_center, exterior_center_full, CapabilityReport, CrossCheck,
};
pub use expand::Expander;
pub use oracle::{oracle_square, OracleTable};
pub use square::{
    j2_and_nabla, nabla_from_all_elements, square, square_with, target_order_log, Engine, SquareOptions,
    SquareResult,
};
pub use symbols::{FormalSum, Mode, SymbolSet};
