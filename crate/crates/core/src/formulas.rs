//! Closed-form predictions for the special families, as pure arithmetic.
//!
//! Every entry has a stable id. Entries whose printed form is known to
//! disagree with direct computation carry a `known_discrepancy` note.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankKind {
    /// `|G'| = p^{d(d-1)/2}`
    Full,
    /// `|G'| = p^{d(d-1)/2 - 1}`
    Deficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Psi2ImageDim,
    PowerTensorDim,
    IntersectionDim,
    /// `log_p |M(G)|`
    MultiplierLog,
    /// whether `|M(G)|` attains `p^{d(d^2-1)/3}`
    MultiplierMaximal,
    ExteriorLog,
    ExteriorStructure,
    /// whether `G∧G` is elementary of the exponent-`p` rank
    ExteriorElementaryMaximal,
    TensorLog,
    TensorStructure,
    TensorElementaryMaximal,
    NablaLog,
    J2Log,
    Capable,
}

/// A predicted value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Value {
    Int(i64),
    Bool(bool),
    /// `Z_{p^2}^{p2} + Z_p^{p1}`
    Structure { p2: i64, p1: i64 },
    /// A computed value outside the shapes above, e.g. a factor of order `p^3`.
    Other(String),
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Structure { p2, p1 } => write!(f, "Zp2^{p2} + Zp^{p1}"),
            Value::Other(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub id: String,
    pub quantity: Quantity,
    pub formula: String,
    pub value: Value,
    /// False when the statement's hypotheses (exponent `p`, range of `t`) fail.
    pub applies: bool,
    pub known_discrepancy: Option<String>,
}

/// `t(2d - t + 1)/2`
pub fn power_rank(d: i64, t: i64) -> i64 {
    t * (2 * d - t + 1) / 2
}

pub fn psi2_rank(d: i64) -> i64 {
    d * (d - 1) * (d - 2) / 6
}

/// `d(d-1)(d+1)/3`, the exponent-`p` rank-full multiplier rank.
pub fn multiplier_rank_max(d: i64) -> i64 {
    d * (d - 1) * (d + 1) / 3
}

pub fn nabla_rank(d: i64) -> i64 {
    d * (d + 1) / 2
}

pub fn derived_rank(d: i64, kind: RankKind) -> i64 {
    match kind {
        RankKind::Full => d * (d - 1) / 2,
        RankKind::Deficient => d * (d - 1) / 2 - 1,
    }
}

/// Identifiers of every catalogue entry.
pub const FORMULA_IDS: &[&str] = &[
    "psi2_image_rank",
    "power_tensor_rank",
    "psi2_power_intersection",
    "multiplier_rank_full_exp_p",
    "multiplier_rank_full",
    "multiplier_order_max",
    "exterior_order_rank_full",
    "exterior_elementary_exp_p",
    "exterior_structure_rank_full",
    "tensor_order_rank_full",
    "tensor_elementary_exp_p",
    "tensor_structure_rank_full",
    "nabla_rank",
    "j2_decomposition",
    "j2_rank_full_printed",
    "capable_rank_full_exp_p",
    "capable_iff_power_rank_not_one",
    "multiplier_rank_deficient_exp_p",
    "multiplier_rank_deficient",
    "multiplier_rank_deficient_alt",
    "exterior_order_rank_deficient",
    "tensor_order_rank_deficient_printed",
    "j2_rank_deficient_printed",
    "exterior_rank_deficient_exp_p_printed",
    "tensor_rank_deficient_exp_p_printed",
    "j2_rank_deficient_exp_p_printed",
    "exterior_elementary_exp_p2_noncapable",
    "quotient_power_rank_step",
];

struct Builder {
    out: Vec<Prediction>,
}

impl Builder {
    fn push(&mut self, id: &str, quantity: Quantity, formula: &str, value: Value, applies: bool, known: Option<&str>) {
        self.out.push(Prediction {
            id: id.to_string(),
            quantity,
            formula: formula.to_string(),
            value,
            applies,
            known_discrepancy: known.map(str::to_string),
        });
    }
}

/// Predictions for a `d`-generator special group of the given rank kind with `|G^p| = p^t`.
pub fn formula_suite(d: usize, p: u32, t: usize, kind: RankKind) -> Result<Vec<Prediction>> {
    if d < 3 {
        return Err(Error::Usage(format!("d = {d}: the closed forms need d >= 3")));
    }
    if p.is_multiple_of(2) {
        return Err(Error::Usage("the closed forms need an odd prime".into()));
    }
    if t > d {
        return Err(Error::Usage(format!("t = {t} exceeds d = {d}")));
    }
    let (d, t) = (d as i64, t as i64);
    let pw = power_rank(d, t);
    let exp_p = t == 0;
    let mut b = Builder { out: Vec::new() };
    use Quantity::*;

    b.push("psi2_image_rank", Psi2ImageDim, "d(d-1)(d-2)/6", Value::Int(psi2_rank(d)), true, None);
    b.push("power_tensor_rank", PowerTensorDim, "t(2d-t+1)/2", Value::Int(pw), true, None);
    b.push("psi2_power_intersection", IntersectionDim, "0", Value::Int(0), true, None);
    b.push(
        "multiplier_order_max",
        MultiplierMaximal,
        "|M| = p^{d(d^2-1)/3} iff rank-full and exponent p",
        Value::Bool(kind == RankKind::Full && exp_p),
        true,
        None,
    );
    b.push("nabla_rank", NablaLog, "d(d+1)/2", Value::Int(nabla_rank(d)), true, None);

    match kind {
        RankKind::Full => {
            let m = multiplier_rank_max(d) - pw;
            b.push(
                "multiplier_rank_full_exp_p",
                MultiplierLog,
                "d(d-1)(d+1)/3",
                Value::Int(multiplier_rank_max(d)),
                exp_p,
                None,
            );
            b.push("multiplier_rank_full", MultiplierLog, "d(d-1)(d+1)/3 - t(2d-t+1)/2", Value::Int(m), true, None);
            b.push(
                "exterior_order_rank_full",
                ExteriorLog,
                "d(d-1)(2d+5)/6 - t(2d-t+1)/2",
                Value::Int(d * (d - 1) * (2 * d + 5) / 6 - pw),
                true,
                None,
            );
            b.push(
                "exterior_elementary_exp_p",
                ExteriorElementaryMaximal,
                "G∧G = Z_p^{d(d-1)(2d+5)/6} iff exponent p",
                Value::Bool(exp_p),
                true,
                None,
            );
            let p2 = t * (t - 1) / 2;
            let p1 = multiplier_rank_max(d) + d * (d - 1) / 2 - t * d - p2;
            b.push(
                "exterior_structure_rank_full",
                ExteriorStructure,
                "Z_{p^2}^{t(t-1)/2} + Z_p^{(d-1)d(d+1)/3 + (d-1)d/2 - td - t(t-1)/2}",
                Value::Structure { p2, p1 },
                true,
                (t == d).then_some("t = d regime: the Z_p exponent can go negative and the split is unattainable"),
            );
            b.push(
                "tensor_order_rank_full",
                TensorLog,
                "d(d^2+3d-1)/3 - t(2d-t+1)/2",
                Value::Int(d * (d * d + 3 * d - 1) / 3 - pw),
                true,
                None,
            );
            b.push(
                "tensor_elementary_exp_p",
                TensorElementaryMaximal,
                "G⊗G = Z_p^{d(d^2+3d-1)/3} iff exponent p",
                Value::Bool(exp_p),
                true,
                None,
            );
            b.push(
                "tensor_structure_rank_full",
                TensorStructure,
                "Z_{p^2}^{t(t-1)/2} + Z_p^{(d-1)d(d+1)/3 + d^2 - td - t(t-1)/2}",
                Value::Structure { p2, p1: multiplier_rank_max(d) + d * d - t * d - p2 },
                true,
                (t == d).then_some("t = d regime, inherited from the exterior-square split"),
            );
            b.push(
                "j2_decomposition",
                J2Log,
                "J2 = M + nabla: d(d-1)(d+1)/3 - t(2d-t+1)/2 + d(d+1)/2",
                Value::Int(m + nabla_rank(d)),
                true,
                None,
            );
            b.push(
                "j2_rank_full_printed",
                J2Log,
                "d(d+1)(2d-1)/6 - t(2d-t+1)/2",
                Value::Int(d * (d + 1) * (2 * d - 1) / 6 - pw),
                true,
                Some("printed 2d-1 where M + nabla gives d(d+1)(2d+1)/6"),
            );
            b.push("capable_rank_full_exp_p", Capable, "exponent p implies capable", Value::Bool(true), exp_p, None);
            b.push(
                "capable_iff_power_rank_not_one",
                Capable,
                "capable iff t != 1",
                Value::Bool(t != 1),
                true,
                None,
            );
        }
        RankKind::Deficient => {
            let m = multiplier_rank_max(d) - d + 1 - pw;
            b.push(
                "multiplier_rank_deficient_exp_p",
                MultiplierLog,
                "d(d-1)(d+1)/3 - d + 1",
                Value::Int(multiplier_rank_max(d) - d + 1),
                exp_p,
                None,
            );
            b.push(
                "multiplier_rank_deficient",
                MultiplierLog,
                "d(d-1)(d+1)/3 - d + 1 - t(2d-t+1)/2",
                Value::Int(m),
                true,
                None,
            );
            b.push(
                "multiplier_rank_deficient_alt",
                MultiplierLog,
                "(d-1)(d^2+d-3)/3 - t(2d-t+1)/2",
                Value::Int((d - 1) * (d * d + d - 3) / 3 - pw),
                true,
                None,
            );
            let ext = (d - 1) * (2 * d * d + 5 * d - 6) / 6;
            b.push(
                "exterior_order_rank_deficient",
                ExteriorLog,
                "(d-1)(2d^2+5d-6)/6 - t(2d-t+1)/2 - 1",
                Value::Int(ext - pw - 1),
                true,
                None,
            );
            let tensor_printed = d * (d * d + 3 * d - 4) / 3;
            b.push(
                "tensor_order_rank_deficient_printed",
                TensorLog,
                "d(d^2+3d-4)/3 - t(2d-t+1)/2 + 1",
                Value::Int(tensor_printed - pw + 1),
                true,
                Some("the +1 disagrees with |G∧G||nabla|, which gives d(d^2+3d-4)/3 - t(2d-t+1)/2 - 1"),
            );
            let j2_printed = (d + 1) * (2 * d - 3) * (d + 2) / 3;
            b.push(
                "j2_rank_deficient_printed",
                J2Log,
                "(d+1)(2d-3)(d+2)/3 - t(2d-t+1)/2 + 2",
                Value::Int(j2_printed - pw + 2),
                true,
                Some("disagrees with J2 = M + nabla"),
            );
            b.push(
                "j2_decomposition",
                J2Log,
                "J2 = M + nabla: d(d-1)(d+1)/3 - d + 1 - t(2d-t+1)/2 + d(d+1)/2",
                Value::Int(m + nabla_rank(d)),
                true,
                None,
            );
            b.push(
                "exterior_rank_deficient_exp_p_printed",
                ExteriorLog,
                "(d-1)(2d^2+5d-6)/6 + 1",
                Value::Int(ext + 1),
                exp_p,
                Some("sign of the constant: |M||G'| gives (d-1)(2d^2+5d-6)/6 - 1"),
            );
            b.push(
                "tensor_rank_deficient_exp_p_printed",
                TensorLog,
                "d(d^2+3d-4)/3 + 1",
                Value::Int(tensor_printed + 1),
                exp_p,
                Some("inherits the exterior-square constant"),
            );
            b.push(
                "j2_rank_deficient_exp_p_printed",
                J2Log,
                "(d+1)(2d-3)(d+2)/3 + 2",
                Value::Int(j2_printed + 2),
                exp_p,
                Some("disagrees with J2 = M + nabla"),
            );
        }
    }
    Ok(b.out)
}
