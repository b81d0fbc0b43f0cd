//! Basic commutators on `x_1 < … < x_d` and Witt's count.
//!
//! Weight-`n` basic commutators are `[c_i, c_j]` with `wt c_i + wt c_j = n`,
//! `c_i > c_j`, and `c_j ≥ c_t` whenever `c_i = [c_s, c_t]`. Within a weight
//! they are ordered lexicographically: by `c_i`, then by `c_j`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplier::multiplier_order_log;
use crate::pc::families::free_special;

/// Largest weight `enumerate_basic` will produce.
pub const MAX_WEIGHT: usize = 4;

/// Möbius function; `mobius(1) = 1`.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius(0) is undefined");
    let mut n = n;
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `χ_n(d) = (1/n) Σ_{m | n} μ(m) d^{n/m}`.
pub fn witt_chi(n: u32, d: u64) -> BigInt {
    assert!(n >= 1 && d >= 1, "witt_chi needs n, d >= 1");
    let mut sum = BigInt::from(0);
    for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
        let mu = mobius(m as u64);
        if mu != 0 {
            sum += BigInt::from(mu) * num_traits::pow(BigInt::from(d), (n / m) as usize);
        }
    }
    debug_assert!(!sum.is_negative());
    sum / BigInt::from(n)
}

/// `witt_chi` for small arguments.
pub fn witt_chi_u64(n: u32, d: u64) -> u64 {
    witt_chi(n, d).to_u64().expect("Witt number fits in u64")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// `x_{i+1}`
    Letter(usize),
    /// `[c_left, c_right]`, by position in the basis.
    Bracket(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicCommutator {
    pub shape: Shape,
    pub weight: usize,
    /// Position in the total order, from 0.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallBasis {
    pub d: usize,
    pub max_weight: usize,
    pub elements: Vec<BasicCommutator>,
}

impl HallBasis {
    pub fn weight_slice(&self, w: usize) -> &[BasicCommutator] {
        let start = self.elements.partition_point(|c| c.weight < w);
        let end = self.elements.partition_point(|c| c.weight <= w);
        &self.elements[start..end]
    }

    pub fn counts(&self) -> Vec<usize> {
        (1..=self.max_weight).map(|w| self.weight_slice(w).len()).collect()
    }

    pub fn render(&self, c: &BasicCommutator) -> String {
        match c.shape {
            Shape::Letter(i) => format!("x{}", i + 1),
            Shape::Bracket(a, b) => {
                format!("[{},{}]", self.render(&self.elements[a]), self.render(&self.elements[b]))
            }
        }
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.elements {
            writeln!(f, "{:>4}  w{}  {}", c.position + 1, c.weight, self.render(c))?;
        }
        Ok(())
    }
}

pub fn enumerate_basic(d: usize, max_weight: usize) -> Result<HallBasis> {
    if max_weight > MAX_WEIGHT {
        return Err(Error::WeightCap { weight: max_weight, cap: MAX_WEIGHT });
    }
    let mut elements: Vec<BasicCommutator> = Vec::new();
    if max_weight >= 1 {
        elements.extend((0..d).map(|i| BasicCommutator { shape: Shape::Letter(i), weight: 1, position: i }));
    }
    for n in 2..=max_weight {
        let prior = elements.len();
        let mut fresh = Vec::new();
        for i in 0..prior {
            for j in 0..i {
                let (ci, cj) = (&elements[i], &elements[j]);
                if ci.weight + cj.weight != n {
                    continue;
                }
                if let Shape::Bracket(_, t) = ci.shape {
                    if j < t {
                        continue;
                    }
                }
                fresh.push((i, j));
            }
        }
        // i ascending, then j ascending: already lexicographic
        for (k, (i, j)) in fresh.into_iter().enumerate() {
            elements.push(BasicCommutator { shape: Shape::Bracket(i, j), weight: n, position: prior + k });
        }
    }
    Ok(HallBasis { d, max_weight, elements })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCrosscheck {
    pub d: usize,
    pub weight3: u64,
    pub weight2: u64,
    /// `d(d-1)(d+1)/3`
    pub weight3_closed: u64,
    /// `d(d-1)/2`
    pub weight2_closed: u64,
    /// `log_3 |M|` of the free special group on `d` generators.
    pub multiplier_rank: Option<u32>,
    /// `log_3 |G'|` of the same group.
    pub derived_rank: Option<usize>,
}

impl RankCrosscheck {
    pub fn consistent(&self) -> bool {
        self.weight3 == self.weight3_closed
            && self.weight2 == self.weight2_closed
            && self.multiplier_rank.is_none_or(|m| m as u64 == self.weight3)
            && self.derived_rank.is_none_or(|r| r as u64 == self.weight2)
    }
}

/// Largest `d` for which the multiplier is computed in `rank_crosscheck`.
pub const CROSSCHECK_MULTIPLIER_MAX_D: usize = 6;

pub fn rank_crosscheck(d: usize) -> Result<RankCrosscheck> {
    if d < 2 {
        return Err(Error::Usage(format!("rank cross-check needs d >= 2, got {d}")));
    }
    let du = d as u64;
    let (multiplier_rank, derived_rank) = if (3..=CROSSCHECK_MULTIPLIER_MAX_D).contains(&d) {
        let g = free_special(d, 3)?;
        (Some(multiplier_order_log(&g)?), Some(g.comm_span().dim()))
    } else {
        (None, None)
    };
    let out = RankCrosscheck {
        d,
        weight3: witt_chi_u64(3, du),
        weight2: witt_chi_u64(2, du),
        weight3_closed: du * (du - 1) * (du + 1) / 3,
        weight2_closed: du * (du - 1) / 2,
        multiplier_rank,
        derived_rank,
    };
    if !out.consistent() {
        return Err(Error::Inconsistent(format!("rank cross-check failed: {out:?}")));
    }
    Ok(out)
}
