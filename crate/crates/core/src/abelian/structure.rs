use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Invariant-factor decomposition `Z_{d_1} + ... + Z_{d_k} + Z^free`
/// with `d_1 | d_2 | ... | d_k` and every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianStructure {
    pub invariant_factors: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Build from cyclic orders in any order; the result is normalised to a
    /// divisibility chain. Orders of 1 are dropped.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        // Split into primary parts, then recombine column-wise.
        let mut primary: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &n in orders {
            for (q, e) in factorize(n) {
                primary.entry(q).or_default().push(q.pow(e));
            }
        }
        let width = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for powers in primary.values_mut() {
            powers.sort_unstable();
            let offset = width - powers.len();
            for (i, &pp) in powers.iter().enumerate() {
                factors[offset + i] *= pp;
            }
        }
        factors.retain(|&f| f > 1);
        Self { invariant_factors: factors, free_rank: 0 }
    }

    /// `Z_p^rank`.
    pub fn elementary(p: u64, rank: usize) -> Self {
        Self { invariant_factors: vec![p; rank], free_rank: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Number of cyclic factors (the minimal number of generators).
    pub fn rank(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn order(&self) -> Option<BigUint> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigUint::from(1u32), |acc, &f| acc * f))
    }

    /// `log_p |A|` when `A` is a finite p-group.
    pub fn order_log(&self, p: u64) -> Option<u32> {
        if !self.is_finite() {
            return None;
        }
        let mut total = 0;
        for &f in &self.invariant_factors {
            total += exact_log(f, p)?;
        }
        Some(total)
    }

    pub fn exponent(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.last().copied().unwrap_or(1))
    }

    pub fn is_elementary(&self, p: u64) -> bool {
        self.is_finite() && self.invariant_factors.iter().all(|&f| f == p)
    }

    /// How many cyclic factors equal `n`.
    pub fn count_of(&self, n: u64) -> usize {
        self.invariant_factors.iter().filter(|&&f| f == n).count()
    }

    /// For a p-group: `(e, multiplicity)` pairs of `Z_{p^e}` factors, ascending.
    pub fn p_profile(&self, p: u64) -> Option<Vec<(u32, usize)>> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &f in &self.invariant_factors {
            let e = exact_log(f, p)?;
            match out.last_mut() {
                Some((le, n)) if *le == e => *n += 1,
                _ => out.push((e, 1)),
            }
        }
        Some(out)
    }

    pub fn check_chain(&self) -> Result<()> {
        for w in self.invariant_factors.windows(2) {
            if w[0] <= 1 || w[1] % w[0] != 0 {
                return Err(Error::Usage(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        if self.invariant_factors.first().is_some_and(|&f| f <= 1) {
            return Err(Error::Usage("invariant factor <= 1".into()));
        }
        Ok(())
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let n = self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|&&x| x == n).count();
            parts.push(if run == 1 { format!("Z{n}") } else { format!("Z{n}^{run}") });
            i += run;
        }
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn exact_log(mut n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recombines_primary_parts() {
        let s = AbelianStructure::from_cyclic_orders(&[2, 3, 4, 1]);
        assert_eq!(s.invariant_factors, vec![2, 12]);
        s.check_chain().unwrap();
        assert_eq!(s.order().unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn display() {
        let s = AbelianStructure::from_cyclic_orders(&[3, 3, 9]);
        assert_eq!(s.to_string(), "Z3^2 + Z9");
        assert_eq!(AbelianStructure::trivial().to_string(), "1");
        assert_eq!(s.p_profile(3).unwrap(), vec![(1, 2), (2, 1)]);
        assert_eq!(s.order_log(3), Some(4));
    }
}
