//! Submodules of `(Z/p^k)^n` in Howell form.
//!
//! If `A = Z^n / L` is a finite p-group, then `A / p^k A` is the cokernel of
//! the image of `L` here. When that cokernel has no cyclic factor of order
//! `p^k`, it already equals `A`; callers use this to certify exponent bounds
//! instead of assuming them.

use super::structure::AbelianStructure;

#[derive(Debug, Clone)]
pub struct ModularLattice {
    p: u64,
    k: u32,
    modulus: u64,
    n: usize,
    /// Row with pivot in column `j`: zero before `j`, `p^v` at `j`.
    pivots: Vec<Option<Vec<u64>>>,
    valuations: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularCokernel {
    /// Exponents `e` of the cyclic factors `Z/p^e`, ascending, `1 <= e <= k`.
    pub exponents: Vec<u32>,
    pub k: u32,
}

impl ModularCokernel {
    /// `true` when some factor hits `p^k`, i.e. the true group may be larger.
    pub fn saturated(&self) -> bool {
        self.exponents.last().is_some_and(|&e| e >= self.k)
    }

    pub fn order_log(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn structure(&self, p: u64) -> AbelianStructure {
        AbelianStructure {
            invariant_factors: self.exponents.iter().map(|&e| p.pow(e)).collect(),
            free_rank: 0,
        }
    }
}

fn valuation(mut x: u64, p: u64, k: u32) -> u32 {
    if x == 0 {
        return k;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(m as i128) as u64
}

impl ModularLattice {
    pub fn new(n: usize, p: u64, k: u32) -> Self {
        let modulus = p.checked_pow(k).expect("p^k overflows u64");
        assert!(modulus < (1u64 << 31), "modulus too large for u64 products");
        Self { p, k, modulus, n, pivots: vec![None; n], valuations: vec![k; n] }
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce_i64(&self, row: &[i64]) -> Vec<u64> {
        let m = self.modulus as i64;
        row.iter().map(|&x| x.rem_euclid(m) as u64).collect()
    }

    pub fn insert_i64(&mut self, row: &[i64]) {
        let v = self.reduce_i64(row);
        self.insert(v);
    }

    /// Insert a row; returns `true` if the submodule grew.
    pub fn insert(&mut self, row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.n);
        let mut grew = false;
        let mut work = vec![row];
        while let Some(mut v) = work.pop() {
            let mut col = 0;
            while col < self.n {
                if v[col] == 0 {
                    col += 1;
                    continue;
                }
                let vv = valuation(v[col], self.p, self.k);
                match &self.pivots[col] {
                    Some(w) if self.valuations[col] <= vv => {
                        let c = v[col] / self.p.pow(self.valuations[col]);
                        let neg = self.modulus - c % self.modulus;
                        for j in col..self.n {
                            v[j] = (v[j] + neg * w[j]) % self.modulus;
                        }
                        col += 1;
                    }
                    _ => {
                        // Normalise so the pivot is exactly p^vv.
                        let unit = v[col] / self.p.pow(vv);
                        let inv = inv_mod(unit % self.modulus, self.modulus);
                        for x in v.iter_mut() {
                            *x = *x * inv % self.modulus;
                        }
                        if vv > 0 {
                            let f = self.p.pow(self.k - vv);
                            let ann: Vec<u64> = v.iter().map(|&x| x * f % self.modulus).collect();
                            work.push(ann);
                        }
                        if let Some(old) = self.pivots[col].replace(v) {
                            work.push(old);
                        }
                        self.valuations[col] = vv;
                        grew = true;
                        break;
                    }
                }
            }
        }
        grew
    }

    pub fn contains_i64(&self, row: &[i64]) -> bool {
        self.contains(&self.reduce_i64(row))
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut v = row.to_vec();
        for col in 0..self.n {
            if v[col] == 0 {
                continue;
            }
            let Some(w) = &self.pivots[col] else { return false };
            let vv = valuation(v[col], self.p, self.k);
            if vv < self.valuations[col] {
                return false;
            }
            let c = v[col] / self.p.pow(self.valuations[col]);
            let neg = self.modulus - c % self.modulus;
            for j in col..self.n {
                v[j] = (v[j] + neg * w[j]) % self.modulus;
            }
        }
        true
    }

    /// `log_p` of the cokernel order.
    pub fn cokernel_order_log(&self) -> u32 {
        self.valuations.iter().sum()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// Structure of the subgroup `H` of the cokernel generated by `gens`, from
    /// `log |p^e H| = log |coker| - log |coker / p^e H|`.
    pub fn subgroup_structure(&self, gens: &[Vec<u64>]) -> ModularCokernel {
        let total = self.cokernel_order_log();
        let mut sizes = Vec::with_capacity(self.k as usize + 1);
        for e in 0..=self.k {
            let f = self.p.pow(e) % self.modulus;
            let mut lat = self.clone();
            if f != 0 {
                for g in gens {
                    lat.insert(g.iter().map(|&x| x % self.modulus * f % self.modulus).collect());
                }
            }
            sizes.push(total - lat.cokernel_order_log());
        }
        // sizes[e] - sizes[e+1] = #{factors of order > p^e}
        let at_least: Vec<u32> = (0..self.k as usize).map(|e| sizes[e] - sizes[e + 1]).collect();
        let mut exponents = Vec::new();
        for lambda in 1..=self.k as usize {
            let next = at_least.get(lambda).copied().unwrap_or(0);
            for _ in 0..(at_least[lambda - 1] - next) {
                exponents.push(lambda as u32);
            }
        }
        ModularCokernel { exponents, k: self.k }
    }

    /// Cokernel structure via Smith form over the chain ring `Z/p^k`.
    pub fn cokernel(&self) -> ModularCokernel {
        let mut a = self.rows();
        let (m, n) = (a.len(), self.n);
        let (p, k, md) = (self.p, self.k, self.modulus);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            let mut best: Option<(usize, usize, u32)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let v = valuation(x, p, k);
                        if best.is_none_or(|b| v < b.2) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let Some((bi, bj, bv)) = best else { break };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let unit = a[t][t] / p.pow(bv);
            let inv = inv_mod(unit % md, md);
            for x in a[t].iter_mut() {
                *x = *x * inv % md;
            }
            let pivot_row = a[t].clone();
            let pp = p.pow(bv);
            for row in a.iter_mut().skip(t + 1) {
                if row[t] != 0 {
                    let c = row[t] / pp;
                    let neg = md - c % md;
                    for j in t..n {
                        row[j] = (row[j] + neg * pivot_row[j]) % md;
                    }
                }
            }
            // Column clearing only touches row t, which is not needed afterwards.
            diag.push(bv);
            t += 1;
        }
        let mut exponents: Vec<u32> = diag.into_iter().filter(|&v| v > 0).collect();
        exponents.extend(std::iter::repeat_n(k, n - t));
        exponents.sort_unstable();
        ModularCokernel { exponents, k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_of_simple_relations() {
        // Z^2 / <(3,0),(0,9)>
        let mut l = ModularLattice::new(2, 3, 3);
        l.insert_i64(&[3, 0]);
        l.insert_i64(&[0, 9]);
        let c = l.cokernel();
        assert_eq!(c.exponents, vec![1, 2]);
        assert!(!c.saturated());
        assert_eq!(l.cokernel_order_log(), 3);
    }

    #[test]
    fn unrelated_column_saturates() {
        let mut l = ModularLattice::new(2, 3, 3);
        l.insert_i64(&[3, 0]);
        let c = l.cokernel();
        assert!(c.saturated());
    }

    #[test]
    fn subgroup_of_cokernel() {
        // Z/9 + Z/3; subgroup generated by 3·e0 and e1 is Z/3 + Z/3
        let mut l = ModularLattice::new(2, 3, 3);
        l.insert_i64(&[9, 0]);
        l.insert_i64(&[0, 3]);
        let h = l.subgroup_structure(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(h.exponents, vec![1, 1]);
        let h = l.subgroup_structure(&[vec![1, 1]]);
        assert_eq!(h.exponents, vec![2]);
        assert_eq!(l.subgroup_structure(&[]).exponents, Vec::<u32>::new());
    }

    #[test]
    fn howell_closure_membership() {
        // Row (3, 1) mod 27: 9 * (3, 1) = (0, 9) must be a member.
        let mut l = ModularLattice::new(2, 3, 3);
        l.insert_i64(&[3, 1]);
        assert!(l.contains_i64(&[0, 9]));
        assert!(!l.contains_i64(&[0, 3]));
        assert!(l.contains_i64(&[6, 2]));
    }
}
