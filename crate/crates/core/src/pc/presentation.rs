use serde::{Deserialize, Serialize};

use crate::abelian::fp::{self, Subspace};
use crate::error::{Error, Result};

/// Index of the pair `(i, j)`, `i > j`, 0-based, in the order (1,0),(2,0),(2,1),(3,0),...
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i > j);
    i * (i - 1) / 2 + j
}

/// All pairs `(i, j)` with `i > j` in `pair_index` order.
pub fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (0..i).map(move |j| (i, j))).collect()
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q))
}

/// A power-commutator presentation of a group of class at most 2.
///
/// Generators `x_1..x_d` (stored 0-based) and central generators `u_1..u_r`
/// of order `p`. `comm[pair_index(i, j)]` holds `[x_i, x_j]` for `i > j`, and
/// `pow[i]` holds `x_i^p`, both as vectors over `F_p^r`.
/// Convention: `[g, h] = g h g^-1 h^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PcPresentation {
    p: u32,
    d: usize,
    r: usize,
    comm: Vec<Vec<u32>>,
    pow: Vec<Vec<u32>>,
}

impl PcPresentation {
    /// Checks shapes and ranges. The presentation need not be reduced.
    pub fn new(p: u32, d: usize, r: usize, comm: Vec<Vec<u32>>, pow: Vec<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPresentation(format!("{p} is not prime")));
        }
        if p >= 1 << 15 {
            return Err(Error::InvalidPresentation(format!("prime {p} is too large")));
        }
        if comm.len() != d * d.saturating_sub(1) / 2 {
            return Err(Error::InvalidPresentation(format!(
                "expected {} commutator vectors, got {}",
                d * d.saturating_sub(1) / 2,
                comm.len()
            )));
        }
        if pow.len() != d {
            return Err(Error::InvalidPresentation(format!("expected {d} power vectors, got {}", pow.len())));
        }
        for v in comm.iter().chain(&pow) {
            if v.len() != r {
                return Err(Error::InvalidPresentation(format!("vector of length {} in rank {r}", v.len())));
            }
            if v.iter().any(|&x| x >= p) {
                return Err(Error::InvalidPresentation(format!("entry out of range 0..{p}")));
            }
        }
        Ok(Self { p, d, r, comm, pow })
    }

    /// Like `new`, followed by `reduce`.
    pub fn reduced(p: u32, d: usize, r: usize, comm: Vec<Vec<u32>>, pow: Vec<Vec<u32>>) -> Result<Self> {
        Ok(Self::new(p, d, r, comm, pow)?.reduce())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `log_p |G|`.
    pub fn order_log(&self) -> usize {
        self.d + self.r
    }

    /// `[x_i, x_j]` for any `i != j` (0-based).
    pub fn comm(&self, i: usize, j: usize) -> Vec<u32> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Greater => self.comm[pair_index(i, j)].clone(),
            Less => self.comm[pair_index(j, i)].iter().map(|&x| fp::neg(x, self.p)).collect(),
            Equal => vec![0; self.r],
        }
    }

    pub fn comm_table(&self) -> &[Vec<u32>] {
        &self.comm
    }

    /// `x_i^p` (0-based).
    pub fn pow(&self, i: usize) -> &[u32] {
        &self.pow[i]
    }

    pub fn pow_table(&self) -> &[Vec<u32>] {
        &self.pow
    }

    pub fn is_abelian(&self) -> bool {
        self.comm.iter().all(|v| fp::is_zero(v))
    }

    /// Span of the commutator vectors (the derived subgroup).
    pub fn comm_span(&self) -> Subspace {
        Subspace::span(self.comm.iter().cloned(), self.r, self.p)
    }

    /// Span of the power vectors.
    pub fn pow_span(&self) -> Subspace {
        Subspace::span(self.pow.iter().cloned(), self.r, self.p)
    }

    /// Span of commutator and power vectors.
    pub fn frattini_span(&self) -> Subspace {
        Subspace::span(self.comm.iter().chain(&self.pow).cloned(), self.r, self.p)
    }

    /// Reduced means the central generators are exactly a basis of the span
    /// of all commutator and power vectors.
    pub fn is_reduced(&self) -> bool {
        self.frattini_span().dim() == self.r
    }

    /// Re-express the presentation over a basis of the span of commutator and
    /// power vectors. Already-reduced presentations come back unchanged.
    pub fn reduce(&self) -> Self {
        if self.is_reduced() {
            return self.clone();
        }
        let span = self.frattini_span();
        let coords = |v: &Vec<u32>| span.coordinates(v).expect("vector lies in its own span");
        Self {
            p: self.p,
            d: self.d,
            r: span.dim(),
            comm: self.comm.iter().map(coords).collect(),
            pow: self.pow.iter().map(coords).collect(),
        }
    }

    /// Same commutators, new power table.
    pub fn with_powers(&self, pow: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(self.p, self.d, self.r, self.comm.clone(), pow)
    }

    /// `G/S` for a subspace `S` of the central part, as a reduced presentation.
    pub fn quotient_central(&self, s: &Subspace) -> Result<Self> {
        if s.ambient_dim() != self.r || s.prime() != self.p {
            return Err(Error::Usage("subspace does not live in the central part".into()));
        }
        let keep: Vec<usize> = (0..self.r).filter(|c| !s.pivots().contains(c)).collect();
        let project = |v: &Vec<u32>| {
            let red = s.reduce(v);
            keep.iter().map(|&c| red[c]).collect::<Vec<u32>>()
        };
        Self::reduced(
            self.p,
            self.d,
            keep.len(),
            self.comm.iter().map(project).collect(),
            self.pow.iter().map(project).collect(),
        )
    }

    // --- raw arithmetic on exponent vectors; used by the element wrapper and the oracles ---

    /// Normal form of `(a, b)(a2, b2)`.
    pub fn mul_raw(&self, a: &[u32], b: &[u32], a2: &[u32], b2: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut ra = vec![0u32; self.d];
        let mut rb: Vec<u32> = b.iter().zip(b2).map(|(&x, &y)| (x + y) % p).collect();
        for i in 0..self.d {
            let s = a[i] + a2[i];
            if s >= p {
                fp::axpy(&mut rb, 1, &self.pow[i], p);
            }
            ra[i] = s % p;
        }
        // move x_i^{a2_i} left past x_j^{a_j} for j > i
        for i in 0..self.d {
            if a2[i] == 0 {
                continue;
            }
            for j in (i + 1)..self.d {
                if a[j] != 0 {
                    fp::axpy(&mut rb, a[j] * a2[i] % p, &self.comm[pair_index(j, i)], p);
                }
            }
        }
        (ra, rb)
    }

    /// Central coordinates of `[(a, *), (a2, *)]`.
    pub fn comm_raw(&self, a: &[u32], a2: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.r];
        for i in 0..self.d {
            for j in 0..i {
                let c = (a[i] * a2[j] + p * p - a2[i] * a[j] % p) % p;
                if c != 0 {
                    fp::axpy(&mut out, c, &self.comm[pair_index(i, j)], p);
                }
            }
        }
        out
    }

    pub fn inverse_raw(&self, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let na: Vec<u32> = a.iter().map(|&x| fp::neg(x, self.p)).collect();
        let zero = vec![0u32; self.r];
        let (_, pb) = self.mul_raw(a, b, &na, &zero);
        (na, pb.iter().map(|&x| fp::neg(x, self.p)).collect())
    }

    /// Central coordinates of `(a, b)^p`, valid for odd `p`.
    pub fn pth_power_raw(&self, a: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.r];
        for (i, &ai) in a.iter().enumerate() {
            fp::axpy(&mut out, ai, &self.pow[i], self.p);
        }
        out
    }

    /// Number of elements, if it fits in `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.order_log() as u32)
    }

    /// Decode a normal form from its index in `0..|G|` (main exponents first,
    /// least significant digit first).
    pub fn decode(&self, mut idx: u64) -> (Vec<u32>, Vec<u32>) {
        let p = self.p as u64;
        let mut a = vec![0u32; self.d];
        let mut b = vec![0u32; self.r];
        for x in a.iter_mut().chain(b.iter_mut()) {
            *x = (idx % p) as u32;
            idx /= p;
        }
        (a, b)
    }

    pub fn encode(&self, a: &[u32], b: &[u32]) -> u64 {
        let p = self.p as u64;
        a.iter().chain(b).rev().fold(0u64, |acc, &x| acc * p + x as u64)
    }
}
