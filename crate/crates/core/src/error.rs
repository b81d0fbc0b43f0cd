use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hypotheses violated: {0}")]
    Hypothesis(String),

    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: u128, cap: u128 },

    #[error("weight {weight} exceeds the cap {cap}")]
    WeightCap { weight: usize, cap: usize },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("infinite group where a finite one is required")]
    Infinite,

    /// The presented square dropped below an independently computed order.
    /// Every imposed relation is sound, so this means the target is wrong.
    #[error("presented order p^{presented} fell below target p^{target}")]
    BelowTarget { presented: u32, target: u32 },

    #[error("square result is not certified")]
    Uncertified,

    /// Two independent computations disagree.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
