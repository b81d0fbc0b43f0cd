//! Linear algebra over the prime field `F_p`.
//!
//! Vectors are `Vec<u32>` with entries in `[0, p)`. Row reduction always
//! scans columns left to right and picks the first usable row, so every
//! basis extracted here is deterministic.

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

/// Reduce an integer into `[0, p)`.
#[inline]
pub fn from_i64(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// `dst += c * src` componentwise.
pub fn axpy(dst: &mut [u32], c: u32, src: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (x, &y) in dst.iter_mut().zip(src) {
        *x = ((*x as u64 + c as u64 * y as u64) % p as u64) as u32;
    }
}

pub fn scale(v: &mut [u32], c: u32, p: u32) {
    for x in v.iter_mut() {
        *x = mul(*x, c, p);
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Bring `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each surviving row.
pub fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = inv_mod(rows[top][col], p);
        scale(&mut rows[top], inv, p);
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != top && row[col] != 0 {
                let c = neg(row[col], p);
                axpy(row, c, &pivot_row, p);
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

/// Dimension of the row span.
pub fn span_dim(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Basis of the right kernel `{v : M v = 0}` for an `m x n` matrix given by rows.
pub fn kernel(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = neg(row[free], p);
        }
        basis.push(v);
    }
    basis
}

/// A subspace of `F_p^n` held as an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize, p: u32) -> Self {
        Self { p, n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize, p: u32) -> Self {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Self { p, n, basis, pivots: (0..n).collect() }
    }

    pub fn span(rows: impl IntoIterator<Item = Vec<u32>>, n: usize, p: u32) -> Self {
        let mut basis: Vec<Vec<u32>> = rows.into_iter().collect();
        debug_assert!(basis.iter().all(|r| r.len() == n));
        let pivots = rref(&mut basis, p);
        Self { p, n, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace; the result is zero on every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if out[pc] != 0 {
                let c = neg(out[pc], self.p);
                axpy(&mut out, c, row, self.p);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        Subspace::span(self.basis.iter().chain(&other.basis).cloned(), self.n, self.p)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        // Solve sum_i a_i s_i = sum_j b_j o_j over the stacked basis.
        let k = self.dim();
        let cols = k + other.dim();
        let rows: Vec<Vec<u32>> = (0..self.n)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|r| r[c])
                    .chain(other.basis.iter().map(|r| neg(r[c], self.p)))
                    .collect()
            })
            .collect();
        let ker = kernel(&rows, cols, self.p);
        let vecs = ker.into_iter().map(|coeffs| {
            let mut v = vec![0u32; self.n];
            for (i, row) in self.basis.iter().enumerate() {
                axpy(&mut v, coeffs[i], row, self.p);
            }
            v
        });
        Subspace::span(vecs, self.n, self.p)
    }
}
