//! Ground-truth squares from the multiplication table.
//!
//! The defining presentation has a generator `z(g,h)` for every pair and the
//! relations `z(gg′,h) = z(ᵍg′,ᵍh) + z(g,h)`, `z(g,hh′) = z(g,h) + z(ʰg,ʰh′)`
//! for all triples (plus `z(g,g) = 0` for the exterior square). Writing each
//! element as a word in the pc letters, these relations themselves eliminate
//! every `z(g,h)` in favour of `z(c,c′)` with `c, c′` conjugates of letters;
//! all relations are then imposed on that reduced generating set.

use std::collections::HashSet;

use super::square::{kappa_kernel_generators, Engine, SquareResult};
use super::symbols::Mode;
use crate::abelian::ModularLattice;
use crate::error::{Error, Result};
use crate::pc::{GroupElement, PcPresentation};

type Sparse = Vec<(u32, i64)>;

fn merge(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push(b[j]);
            j += 1;
        } else {
            let c = a[i].1 + b[j].1;
            if c != 0 {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub const ORACLE_MAX_LOG: u32 = 4;

pub struct OracleTable<'a> {
    pres: &'a PcPresentation,
    mode: Mode,
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Conjugates of the letters, as element indices.
    class: Vec<u32>,
    class_pos: Vec<Option<u32>>,
    tau: Vec<Sparse>,
}

impl<'a> OracleTable<'a> {
    pub fn new(pres: &'a PcPresentation, mode: Mode) -> Result<Self> {
        let cap = (pres.p() as u128).pow(ORACLE_MAX_LOG);
        let order = pres.order().unwrap_or(u128::MAX);
        if order > cap {
            return Err(Error::OrderCap { order, cap });
        }
        let n = order as usize;
        let elems: Vec<GroupElement<'_>> = (0..n as u64).map(|i| GroupElement::from_index(pres, i)).collect();
        let mut mul = vec![0u32; n * n];
        for (g, eg) in elems.iter().enumerate() {
            for (h, eh) in elems.iter().enumerate() {
                mul[g * n + h] = (eg * eh).index() as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| mul[g * n + h] == 0).expect("group") as u32;
        }
        let letters: Vec<u32> = (0..pres.d())
            .map(|i| GroupElement::generator(pres, i).index() as u32)
            .chain((0..pres.r()).map(|a| GroupElement::central(pres, a).index() as u32))
            .collect();

        let mut t = Self { pres, mode, n, mul, inv, class: Vec::new(), class_pos: vec![None; n], tau: Vec::new() };

        // closure of the letters under conjugation
        let mut stack = letters.clone();
        while let Some(c) = stack.pop() {
            if t.class_pos[c as usize].is_some() {
                continue;
            }
            t.class_pos[c as usize] = Some(t.class.len() as u32);
            t.class.push(c);
            for &y in &letters {
                stack.push(t.conj(y, c));
            }
        }

        // spanning tree by right multiplication with letters
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut bfs = vec![0u32];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < bfs.len() {
            let g = bfs[head];
            head += 1;
            for &y in &letters {
                let h = t.m(g, y);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    parent[h as usize] = Some((g, y));
                    bfs.push(h);
                }
            }
        }
        debug_assert_eq!(bfs.len(), n);

        // τ1(g, c) for c in the class, by the left rule
        let nc = t.class.len();
        let mut tau1: Vec<Sparse> = vec![Vec::new(); n * nc];
        for &g in &bfs {
            for ci in 0..nc {
                let c = t.class[ci];
                let v = if g == 0 {
                    Vec::new()
                } else if let Some(gi) = t.class_pos[g as usize] {
                    vec![(gi * nc as u32 + ci as u32, 1)]
                } else {
                    let (par, y) = parent[g as usize].expect("tree");
                    let (cy, cc) = (t.conj(par, y), t.conj(par, c));
                    let var = t.var(cy, cc);
                    merge(&vec![(var, 1)], &tau1[par as usize * nc + ci])
                };
                tau1[g as usize * nc + ci] = v;
            }
        }

        // τ(g, h) by the right rule
        let mut tau: Vec<Sparse> = vec![Vec::new(); n * n];
        for &h in &bfs {
            for g in 0..n as u32 {
                let v = if h == 0 {
                    Vec::new()
                } else if let Some(hi) = t.class_pos[h as usize] {
                    tau1[g as usize * nc + hi as usize].clone()
                } else {
                    let (par, y) = parent[h as usize].expect("tree");
                    let (cg, cy) = (t.conj(par, g), t.conj(par, y));
                    let yi = t.class_pos[cy as usize].expect("closed class") as usize;
                    merge(&tau[g as usize * n + par as usize], &tau1[cg as usize * nc + yi])
                };
                tau[g as usize * n + h as usize] = v;
            }
        }
        t.tau = tau;
        Ok(t)
    }

    fn m(&self, g: u32, h: u32) -> u32 {
        self.mul[g as usize * self.n + h as usize]
    }

    /// `^g h = g h g^-1`.
    fn conj(&self, g: u32, h: u32) -> u32 {
        self.m(self.m(g, h), self.inv[g as usize])
    }

    fn var(&self, c: u32, c2: u32) -> u32 {
        let nc = self.class.len() as u32;
        self.class_pos[c as usize].expect("class") * nc + self.class_pos[c2 as usize].expect("class")
    }

    pub fn nvars(&self) -> usize {
        self.class.len() * self.class.len()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Dense image of `z(g,h)` on the reduced generators.
    pub fn tau(&self, g: u64, h: u64) -> Vec<i64> {
        let mut out = vec![0i64; self.nvars()];
        for &(j, c) in &self.tau[g as usize * self.n + h as usize] {
            out[j as usize] += c;
        }
        out
    }

    fn add_to(&self, row: &mut [i64], g: u32, h: u32, c: i64) {
        for &(j, x) in &self.tau[g as usize * self.n + h as usize] {
            row[j as usize] += c * x;
        }
    }

    /// Every defining relation, reduced modulo `p^k`.
    pub fn lattice(&self, k: u32) -> (ModularLattice, usize) {
        let n = self.n as u32;
        let mut lat = ModularLattice::new(self.nvars(), self.pres.p() as u64, k);
        let mut row = vec![0i64; self.nvars()];
        let mut used = 0;
        let mut seen: HashSet<Vec<(u32, u64)>> = HashSet::new();
        let mut push = |row: &mut Vec<i64>, lat: &mut ModularLattice| {
            used += 1;
            let v = lat.reduce_i64(row);
            let key: Vec<(u32, u64)> =
                v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j as u32, x)).collect();
            if !key.is_empty() && seen.insert(key) {
                lat.insert(v);
            }
            row.iter_mut().for_each(|x| *x = 0);
        };
        if self.mode == Mode::Exterior {
            for g in 0..n {
                self.add_to(&mut row, g, g, 1);
                push(&mut row, &mut lat);
            }
        }
        for g in 0..n {
            for g2 in 0..n {
                let gg2 = self.m(g, g2);
                let cg2 = self.conj(g, g2);
                for h in 0..n {
                    self.add_to(&mut row, gg2, h, 1);
                    self.add_to(&mut row, cg2, self.conj(g, h), -1);
                    self.add_to(&mut row, g, h, -1);
                    push(&mut row, &mut lat);
                    // right rule with (g, h, h′) = (g, g2, h)
                    self.add_to(&mut row, g, self.m(g2, h), 1);
                    self.add_to(&mut row, g, g2, -1);
                    self.add_to(&mut row, self.conj(g2, g), self.conj(g2, h), -1);
                    push(&mut row, &mut lat);
                }
            }
        }
        (lat, used)
    }

    fn kappa(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.nvars());
        for &c in &self.class {
            for &c2 in &self.class {
                let (a, _) = self.pres.decode(c as u64);
                let (a2, _) = self.pres.decode(c2 as u64);
                out.push(self.pres.comm_raw(&a, &a2));
            }
        }
        out
    }

    fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.nvars());
        for &c in &self.class {
            for &c2 in &self.class {
                let g = GroupElement::from_index(self.pres, c as u64);
                let h = GroupElement::from_index(self.pres, c2 as u64);
                out.push(format!("({g}){}({h})", self.mode.symbol()));
            }
        }
        out
    }
}

pub fn oracle_square(pres: &PcPresentation, mode: Mode) -> Result<SquareResult> {
    let table = OracleTable::new(pres, mode)?;
    oracle_from_table(&table)
}

pub fn oracle_from_table(table: &OracleTable<'_>) -> Result<SquareResult> {
    let pres = table.pres;
    let p = pres.p();
    let mut k = 3;
    let mut diagnostics = Vec::new();
    let (lattice, used) = loop {
        let (lat, used) = table.lattice(k);
        let coker = lat.cokernel();
        if !coker.saturated() {
            break (lat, used);
        }
        diagnostics.push(format!("Z/p^{k} factor at K={k}; raising the modulus"));
        k += 1;
        if k > 8 {
            return Err(Error::Inconsistent("oracle square does not look finite".into()));
        }
    };
    let coker = lattice.cokernel();
    let kappa = table.kappa();
    let kgens: Vec<Vec<u64>> =
        kappa_kernel_generators(&kappa, pres.r(), p).iter().map(|g| lattice.reduce_i64(g)).collect();
    let kernel = lattice.subgroup_structure(&kgens).structure(p as u64);
    let nabla = (table.mode == Mode::Tensor).then(|| {
        let gens: Vec<Vec<u64>> =
            (0..table.n as u64).map(|g| lattice.reduce_i64(&table.tau(g, g))).collect();
        lattice.subgroup_structure(&gens).structure(p as u64)
    });
    Ok(SquareResult::from_parts(
        table.mode,
        Engine::Table,
        pres.clone(),
        coker.structure(p as u64),
        true,
        None,
        coker.order_log(),
        used,
        diagnostics,
        table.labels(),
        kappa,
        kernel,
        nabla,
        lattice,
    ))
}
