use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::modular::{ModularCokernel, ModularLattice};
use super::snf::IntegerLattice;
use super::structure::{exact_log, factorize, AbelianStructure};
use crate::error::{Error, Result};

/// A sparse integer row: `(column, coefficient)` pairs, columns ascending.
pub type SparseRow = Vec<(usize, i64)>;

pub fn sparse_from_dense(row: &[i64]) -> SparseRow {
    row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
}

pub fn dense_from_sparse(row: &SparseRow, n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for &(i, x) in row {
        out[i] += x;
    }
    out
}

/// The cokernel of an integer relation matrix: `Z^n / <relations>`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedAbelianGroup {
    pub generators: usize,
    pub relations: Vec<SparseRow>,
}

impl PresentedAbelianGroup {
    pub fn new(generators: usize) -> Self {
        Self { generators, relations: Vec::new() }
    }

    pub fn with_dense_relations(generators: usize, rows: &[Vec<i64>]) -> Self {
        let mut g = Self::new(generators);
        for r in rows {
            g.add_dense(r);
        }
        g
    }

    pub fn add_dense(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.generators);
        let s = sparse_from_dense(row);
        if !s.is_empty() {
            self.relations.push(s);
        }
    }

    pub fn add_sparse(&mut self, row: SparseRow) {
        if row.iter().any(|&(_, x)| x != 0) {
            self.relations.push(row);
        }
    }

    pub(crate) fn lattice(&self) -> IntegerLattice {
        let mut lat = IntegerLattice::new(self.generators);
        for r in &self.relations {
            lat.insert_i64(&dense_from_sparse(r, self.generators));
        }
        lat
    }

    /// Exact invariant factors.
    pub fn structure(&self) -> Result<AbelianStructure> {
        self.lattice().cokernel()
    }

    /// Structure of `A / p^k A`; exact for `A` whenever the result is not saturated.
    pub fn structure_mod(&self, p: u64, k: u32) -> ModularCokernel {
        let mut lat = ModularLattice::new(self.generators, p, k);
        for r in &self.relations {
            lat.insert_i64(&dense_from_sparse(r, self.generators));
        }
        lat.cokernel()
    }

    /// Text debug format: first line `n`, then one relation per line.
    pub fn to_row_text(&self) -> String {
        let mut s = format!("{}\n", self.generators);
        for r in &self.relations {
            let dense = dense_from_sparse(r, self.generators);
            let line: Vec<String> = dense.iter().map(i64::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_row_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: 1, message: "expected generator count".into() })?;
        let mut g = Self::new(n);
        for (i, line) in lines {
            let row: std::result::Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| Error::Parse { line: i + 1, message: "bad integer".into() })?;
            if row.len() != n {
                return Err(Error::Parse { line: i + 1, message: format!("expected {n} entries") });
            }
            g.add_dense(&row);
        }
        Ok(g)
    }
}

/// Structure of the subgroup of `group` generated by the images of `gens`.
///
/// Works prime by prime: the number of cyclic `q`-factors of order at least
/// `q^(e+1)` in `H` is `log_q |q^e H| / |q^(e+1) H|`, and each `|q^e H|` is an
/// index computed from the cokernel of the augmented relation set.
pub fn structure_of_subquotient(group: &PresentedAbelianGroup, gens: &[Vec<i64>]) -> Result<AbelianStructure> {
    let base = group.lattice();
    let ambient = base.cokernel()?;
    let total = ambient.order().ok_or(Error::Infinite)?;
    let primes: Vec<u64> = {
        let mut ps: Vec<u64> =
            ambient.invariant_factors.iter().flat_map(|&f| factorize(f).into_iter().map(|(q, _)| q)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    let index_of = |scale: u64| -> Result<BigUint> {
        let mut lat = base.clone();
        for g in gens {
            assert_eq!(g.len(), group.generators);
            let row: Vec<i64> = g.iter().map(|&x| x * scale as i64).collect();
            lat.insert_i64(&row);
        }
        let quotient = lat.cokernel()?.order().ok_or(Error::Infinite)?;
        Ok(&total / quotient)
    };
    let mut cyclic = Vec::new();
    for q in primes {
        let max_e = ambient
            .invariant_factors
            .iter()
            .map(|&f| q_part_log(f, q))
            .max()
            .unwrap_or(0);
        let mut sizes = Vec::new();
        let mut scale = 1u64;
        for _ in 0..=max_e {
            let h = index_of(scale)?;
            sizes.push(q_part_log_big(&h, q));
            scale = scale.checked_mul(q).ok_or_else(|| Error::Overflow("scale".into()))?;
        }
        // at_least[e] = number of factors of order >= q^(e+1)
        let at_least: Vec<u32> = sizes.windows(2).map(|w| w[0] - w[1]).collect();
        for e in 0..at_least.len() {
            let next = at_least.get(e + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[e] - next) {
                cyclic.push(q.pow(e as u32 + 1));
            }
        }
    }
    Ok(AbelianStructure::from_cyclic_orders(&cyclic))
}

fn q_part_log(mut n: u64, q: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(q) && n > 0 {
        n /= q;
        e += 1;
    }
    e
}

fn q_part_log_big(n: &BigUint, q: u64) -> u32 {
    let mut n = n.clone();
    let q = BigUint::from(q);
    let mut e = 0;
    while !n.is_one() && (&n % &q).to_u64() == Some(0) {
        n /= &q;
        e += 1;
    }
    e
}

/// Schur multiplier of `Z_{p^m_1} + ... + Z_{p^m_k}` with `m_1 >= ... >= m_k >= 1`:
/// the sum over `i >= 2` of `i - 1` copies of `Z_{p^m_i}`.
pub fn multiplier_abelian(exponents: &[u32], p: u64) -> Result<AbelianStructure> {
    if exponents.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Usage(format!("exponents {exponents:?} are not non-increasing")));
    }
    if exponents.contains(&0) {
        return Err(Error::Usage("exponents must be at least 1".into()));
    }
    let mut orders = Vec::new();
    for (i, &m) in exponents.iter().enumerate().skip(1) {
        orders.extend(std::iter::repeat_n(p.pow(m), i));
    }
    Ok(AbelianStructure::from_cyclic_orders(&orders))
}

/// Exponents `m_i` (non-increasing) of a finite abelian p-group.
pub fn p_exponents(s: &AbelianStructure, p: u64) -> Option<Vec<u32>> {
    let mut out: Vec<u32> = s.invariant_factors.iter().map(|&f| exact_log(f, p)).collect::<Option<_>>()?;
    out.reverse();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subquotient_full_and_scaled() {
        // G = Z9^3
        let g = PresentedAbelianGroup::with_dense_relations(
            3,
            &[vec![9, 0, 0], vec![0, 9, 0], vec![0, 0, 9]],
        );
        let full = structure_of_subquotient(&g, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(full, g.structure().unwrap());
        let p_g = structure_of_subquotient(&g, &[vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap();
        assert_eq!(p_g, AbelianStructure::elementary(3, 3));
        let mixed = structure_of_subquotient(&g, &[vec![1, 3, 0]]).unwrap();
        assert_eq!(mixed.invariant_factors, vec![9]);
    }

    #[test]
    fn multiplier_of_abelian_groups() {
        assert_eq!(multiplier_abelian(&[1, 1, 1], 3).unwrap(), AbelianStructure::elementary(3, 3));
        assert!(multiplier_abelian(&[4], 3).unwrap().is_trivial());
        assert_eq!(multiplier_abelian(&[2, 1], 3).unwrap(), AbelianStructure::elementary(3, 1));
        assert!(multiplier_abelian(&[1, 2], 3).is_err());
        // Z9 + Z9 + Z3: Z9 + Z3^2
        assert_eq!(multiplier_abelian(&[2, 2, 1], 3).unwrap().invariant_factors, vec![3, 3, 9]);
    }

    #[test]
    fn row_text_round_trip() {
        let g = PresentedAbelianGroup::with_dense_relations(2, &[vec![2, 4], vec![6, 8]]);
        let text = g.to_row_text();
        assert_eq!(PresentedAbelianGroup::from_row_text(&text).unwrap(), g);
    }
}
