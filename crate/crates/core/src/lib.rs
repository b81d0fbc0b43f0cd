pub mod abelian;
pub mod error;
pub mod formulas;
pub mod hall;
pub mod multiplier;
pub mod pc;
pub mod report;
pub mod wedge;

pub use error::{Error, Result};
