//! Exact Smith normal form over the integers.
//!
//! Entries are arbitrary precision. Large relation sets go through
//! [`IntegerLattice`] first, an incremental Hermite form that keeps at most
//! one row per column and reduces modulo the lattice determinant once the
//! lattice has full rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::structure::AbelianStructure;
use crate::error::{Error, Result};

pub type BigMatrix = Vec<Vec<BigInt>>;

/// `left * M * right = diag`.
#[derive(Debug, Clone)]
pub struct Transforms {
    pub left: BigMatrix,
    pub right: BigMatrix,
}

#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Nonnegative diagonal, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub cokernel: AbelianStructure,
    pub transforms: Option<Transforms>,
}

pub fn to_big(rows: &[Vec<i64>]) -> BigMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &BigMatrix, b: &BigMatrix, inner: usize, cols: usize) -> BigMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

struct Work {
    a: BigMatrix,
    m: usize,
    n: usize,
    left: Option<BigMatrix>,
    right: Option<BigMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(l) = &mut self.left {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        let (src, dst) = borrow_two(&mut self.a, t, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            *d -= q * s;
        }
        if let Some(l) = &mut self.left {
            let (src, dst) = borrow_two(l, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d -= q * s;
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in &mut self.a {
            let v = q * &row[t];
            row[j] -= v;
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                let v = q * &row[t];
                row[j] -= v;
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -&*x;
        }
        if let Some(l) = &mut self.left {
            for x in &mut l[t] {
                *x = -&*x;
            }
        }
    }

    fn run(&mut self) {
        let k = self.m.min(self.n);
        for t in 0..k {
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.m {
                for j in t..self.n {
                    if !self.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut moved = false;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = &self.a[i][t] / &self.a[t][t];
                    self.row_sub(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        self.swap_rows(t, i);
                        moved = true;
                    }
                }
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = &self.a[t][j] / &self.a[t][t];
                    self.col_sub(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        self.swap_cols(t, j);
                        moved = true;
                    }
                }
                if moved {
                    continue;
                }
                let pivot = self.a[t][t].clone();
                let bad = (t + 1..self.m)
                    .find(|&i| (t + 1..self.n).any(|j| !(&self.a[i][j] % &pivot).is_zero()));
                match bad {
                    Some(i) => {
                        // row_t += row_i, then re-clear.
                        self.row_sub(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn borrow_two<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// Smith normal form of an `m x n` integer matrix; the cokernel is `Z^n / rowspan`.
pub fn smith_normal_form(rows: &BigMatrix, ncols: usize, with_transforms: bool) -> Result<SnfResult> {
    let m = rows.len();
    let mut w = Work {
        a: rows.clone(),
        m,
        n: ncols,
        left: with_transforms.then(|| identity(m)),
        right: with_transforms.then(|| identity(ncols)),
    };
    w.run();
    let k = m.min(ncols);
    let diagonal: Vec<BigInt> = (0..k).map(|i| w.a[i][i].clone()).collect();
    let cokernel = cokernel_from_diagonal(&diagonal, ncols)?;
    let transforms = match (w.left, w.right) {
        (Some(left), Some(right)) => Some(Transforms { left, right }),
        _ => None,
    };
    Ok(SnfResult { diagonal, cokernel, transforms })
}

fn cokernel_from_diagonal(diagonal: &[BigInt], ncols: usize) -> Result<AbelianStructure> {
    let mut factors = Vec::new();
    let mut nonzero = 0;
    for d in diagonal {
        if d.is_zero() {
            continue;
        }
        nonzero += 1;
        if !d.is_one() {
            let v = d
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("invariant factor {d} exceeds u64")))?;
            factors.push(v);
        }
    }
    Ok(AbelianStructure { invariant_factors: factors, free_rank: ncols - nonzero })
}

/// Incremental Hermite form of a sublattice of `Z^n`.
#[derive(Debug, Clone)]
pub struct IntegerLattice {
    n: usize,
    pivots: Vec<Option<Vec<BigInt>>>,
    modulus: Option<BigInt>,
}

impl IntegerLattice {
    pub fn new(n: usize) -> Self {
        Self { n, pivots: vec![None; n], modulus: None }
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn insert_i64(&mut self, row: &[i64]) {
        self.insert(row.iter().map(|&x| BigInt::from(x)).collect());
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.n);
        self.reduce_mod(&mut v);
        let mut col = 0;
        while col < self.n {
            if v[col].is_zero() {
                col += 1;
                continue;
            }
            match self.pivots[col].take() {
                None => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.pivots[col] = Some(v);
                    self.refresh_modulus();
                    return;
                }
                Some(w) => {
                    let a = &w[col];
                    let b = &v[col];
                    let e = a.extended_gcd(b);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let (aq, bq) = (a / &g, b / &g);
                    let mut new_w: Vec<BigInt> =
                        w.iter().zip(&v).map(|(wi, vi)| &x * wi + &y * vi).collect();
                    let mut rest: Vec<BigInt> =
                        w.iter().zip(&v).map(|(wi, vi)| &bq * wi - &aq * vi).collect();
                    if new_w[col].is_negative() {
                        new_w.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.reduce_mod(&mut new_w);
                    self.reduce_mod(&mut rest);
                    self.pivots[col] = Some(new_w);
                    self.refresh_modulus();
                    v = rest;
                    col += 1;
                }
            }
        }
    }

    fn refresh_modulus(&mut self) {
        if self.pivots.iter().all(|p| p.is_some()) {
            let det = self
                .pivots
                .iter()
                .enumerate()
                .fold(BigInt::one(), |acc, (i, r)| acc * &r.as_ref().unwrap()[i]);
            if self.modulus.as_ref().is_none_or(|m| &det < m) {
                self.modulus = Some(det);
                let m = self.modulus.clone().unwrap();
                for (i, row) in self.pivots.iter_mut().enumerate() {
                    let row = row.as_mut().unwrap();
                    for x in row.iter_mut().skip(i + 1) {
                        *x = x.mod_floor(&m);
                    }
                }
            }
        }
    }

    fn reduce_mod(&self, v: &mut [BigInt]) {
        if let Some(m) = &self.modulus {
            for x in v.iter_mut() {
                *x = x.mod_floor(m);
            }
        }
    }

    pub fn rows(&self) -> BigMatrix {
        self.pivots.iter().flatten().cloned().collect()
    }

    pub fn cokernel(&self) -> Result<AbelianStructure> {
        let rows = self.rows();
        Ok(smith_normal_form(&rows, self.n, false)?.cokernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_i64(rows: &[Vec<i64>], n: usize) -> SnfResult {
        smith_normal_form(&to_big(rows), n, true).unwrap()
    }

    #[test]
    fn identity_gives_trivial() {
        let r = snf_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        assert!(r.cokernel.is_trivial());
    }

    #[test]
    fn two_by_two() {
        let r = snf_i64(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(r.cokernel.invariant_factors, vec![2, 4]);
    }

    #[test]
    fn zero_row_is_free() {
        let r = snf_i64(&[vec![0, 0]], 2);
        assert_eq!(r.cokernel.free_rank, 2);
        assert!(r.cokernel.invariant_factors.is_empty());
        let r = smith_normal_form(&vec![], 2, false).unwrap();
        assert_eq!(r.cokernel.free_rank, 2);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let rows = vec![vec![4, 6, 2], vec![2, 8, 10], vec![6, 0, 3], vec![1, 1, 1]];
        let r = snf_i64(&rows, 3);
        let t = r.transforms.as_ref().unwrap();
        let m = to_big(&rows);
        let lm = mat_mul(&t.left, &m, 4, 3);
        let d = mat_mul(&lm, &t.right, 3, 3);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &r.diagonal[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        for w in r.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn lattice_matches_direct_snf() {
        let rows = vec![vec![2, 4, 0], vec![6, 8, 0], vec![0, 3, 9], vec![4, 0, 6], vec![0, 0, 27]];
        let direct = snf_i64(&rows, 3).cokernel;
        let mut lat = IntegerLattice::new(3);
        for r in &rows {
            lat.insert_i64(r);
        }
        assert_eq!(lat.cokernel().unwrap(), direct);
    }
}
