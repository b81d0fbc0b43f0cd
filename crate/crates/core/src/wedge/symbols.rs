use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pc::pair_index;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exterior,
    Tensor,
}

impl Mode {
    pub fn symbol(self) -> &'static str {
        match self {
            Mode::Exterior => "^",
            Mode::Tensor => "*",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exterior => "exterior",
            Mode::Tensor => "tensor",
        })
    }
}

/// Generators `ℓ□z` for pc letters `ℓ, z ∈ {x_1..x_d, u_1..u_r}`.
///
/// Tensor layout: `x_i⊗x_k`, then `u_a⊗x_k`, then `x_k⊗u_a`, then `u_a⊗u_b`.
/// The exterior layout keeps `x_i∧x_k` (i<k), `u_a∧x_k` and `u_a∧u_b` (a<b);
/// [`SymbolSet::fold`] maps tensor coordinates onto it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSet {
    pub mode: Mode,
    pub d: usize,
    pub r: usize,
}

impl SymbolSet {
    pub fn new(mode: Mode, d: usize, r: usize) -> Self {
        Self { mode, d, r }
    }

    pub fn tensor_dim(&self) -> usize {
        let (d, r) = (self.d, self.r);
        d * d + 2 * r * d + r * r
    }

    pub fn dim(&self) -> usize {
        let (d, r) = (self.d, self.r);
        match self.mode {
            Mode::Tensor => self.tensor_dim(),
            Mode::Exterior => d * d.saturating_sub(1) / 2 + r * d + r * r.saturating_sub(1) / 2,
        }
    }

    // tensor indices
    pub fn s(&self, i: usize, k: usize) -> usize {
        i * self.d + k
    }

    pub fn t(&self, a: usize, k: usize) -> usize {
        self.d * self.d + a * self.d + k
    }

    pub fn t_prime(&self, k: usize, a: usize) -> usize {
        self.d * self.d + self.r * self.d + k * self.r + a
    }

    pub fn v(&self, a: usize, b: usize) -> usize {
        self.d * self.d + 2 * self.r * self.d + a * self.r + b
    }

    /// Tensor index of `ℓ⊗z` for letters numbered `0..d` (x) then `d..d+r` (u).
    pub fn letter_pair(&self, l: usize, z: usize) -> usize {
        let d = self.d;
        match (l < d, z < d) {
            (true, true) => self.s(l, z),
            (false, true) => self.t(l - d, z),
            (true, false) => self.t_prime(l, z - d),
            (false, false) => self.v(l - d, z - d),
        }
    }

    fn decode_tensor(&self, idx: usize) -> (usize, usize) {
        let (d, r) = (self.d, self.r);
        let mut i = idx;
        if i < d * d {
            return (i / d, i % d);
        }
        i -= d * d;
        if i < r * d {
            return (d + i / d, i % d);
        }
        i -= r * d;
        if i < r * d {
            return (i / r, d + i % r);
        }
        i -= r * d;
        (d + i / r, d + i % r)
    }

    /// Exterior index and sign of the tensor symbol `idx`; `None` on the diagonal.
    pub fn fold_index(&self, idx: usize) -> Option<(usize, i64)> {
        let (d, r) = (self.d, self.r);
        let (l, z) = self.decode_tensor(idx);
        if l == z {
            return None;
        }
        let nx = d * d.saturating_sub(1) / 2;
        Some(match (l < d, z < d) {
            (true, true) => {
                let (hi, lo, sign) = if l < z { (z, l, 1) } else { (l, z, -1) };
                (pair_index(hi, lo), sign)
            }
            (false, true) => (nx + (l - d) * d + z, 1),
            (true, false) => (nx + (z - d) * d + l, -1),
            (false, false) => {
                let (a, b) = (l - d, z - d);
                let (hi, lo, sign) = if a < b { (b, a, 1) } else { (a, b, -1) };
                debug_assert!(r > 1);
                (nx + r * d + pair_index(hi, lo), sign)
            }
        })
    }

    /// Tensor coordinates → coordinates in this set.
    pub fn fold(&self, tensor: &[i64]) -> Vec<i64> {
        if self.mode == Mode::Tensor {
            return tensor.to_vec();
        }
        let mut out = vec![0i64; self.dim()];
        for (idx, &c) in tensor.iter().enumerate() {
            if c != 0 {
                if let Some((j, sign)) = self.fold_index(idx) {
                    out[j] += sign * c;
                }
            }
        }
        out
    }

    /// The two letters of symbol `idx` in this set.
    pub fn letters(&self, idx: usize) -> (usize, usize) {
        match self.mode {
            Mode::Tensor => self.decode_tensor(idx),
            Mode::Exterior => {
                let (d, r) = (self.d, self.r);
                let nx = d * d.saturating_sub(1) / 2;
                if idx < nx {
                    let (hi, lo) = unpair(idx);
                    (lo, hi)
                } else if idx < nx + r * d {
                    let i = idx - nx;
                    (d + i / d, i % d)
                } else {
                    let (hi, lo) = unpair(idx - nx - r * d);
                    (d + lo, d + hi)
                }
            }
        }
    }

    pub fn label(&self, idx: usize) -> String {
        let (l, z) = self.letters(idx);
        format!("{}{}{}", self.letter_name(l), self.mode.symbol(), self.letter_name(z))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    fn letter_name(&self, l: usize) -> String {
        if l < self.d {
            format!("x{}", l + 1)
        } else {
            format!("u{}", l - self.d + 1)
        }
    }
}

/// Inverse of `pair_index`: returns `(i, j)` with `i > j`.
fn unpair(idx: usize) -> (usize, usize) {
    let mut i = 1;
    while i * (i + 1) / 2 <= idx {
        i += 1;
    }
    (i, idx - i * (i - 1) / 2)
}

/// Integer combination of the symbols of a [`SymbolSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    pub symbols: SymbolSet,
    pub coeffs: Vec<i64>,
}

impl FormalSum {
    pub fn zero(symbols: SymbolSet) -> Self {
        Self { symbols, coeffs: vec![0; symbols.dim()] }
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coefficient(&self, label: &str) -> i64 {
        (0..self.symbols.dim()).find(|&i| self.symbols.label(i) == label).map_or(0, |i| self.coeffs[i])
    }

    /// Nonzero `(label, coefficient)` pairs in symbol order.
    pub fn terms(&self) -> Vec<(String, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.symbols.label(i), c))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.symbols, other.symbols);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { symbols: self.symbols, coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self { symbols: self.symbols, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            terms.into_iter().map(|(l, c)| if c == 1 { l } else { format!("{c}·{l}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
