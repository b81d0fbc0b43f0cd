//! Certified presentations of `G∧G` and `G⊗G`.
//!
//! Relations are imposed in tiers until the presented order reaches an
//! independently known target:
//!
//! * `|G∧G| = |M(G)|·|G′|`, with `|M(G)|` from the multiplier pipeline (or the
//!   abelian formula when `G′ = 1`);
//! * `|G⊗G| = |G∧G|·|Γ(G^ab)|`. The map `G⊗G → (G∧G) × (G^ab ⊗ G^ab)` has image
//!   containing `0 × ⟨ā⊗ā⟩`, which has order `|Γ(G^ab)|` for odd order, so
//!   this is a lower bound; `∇(G)` is an image of `Γ(G^ab)`, so it is also an
//!   upper bound.
//!
//! Every imposed row is an instance of a defining relation, so the presented
//! group surjects onto the true square; equal orders certify the isomorphism.
//! Arithmetic is modulo `p^K`; a cokernel with no `Z/p^K` factor equals the
//! full group (see [`ModularLattice`]).

use serde::Serialize;

use super::expand::Expander;
use super::symbols::{FormalSum, Mode, SymbolSet};
use crate::abelian::fp;
use crate::abelian::{
    multiplier_abelian, AbelianStructure, IntegerLattice, ModularCokernel, ModularLattice, PresentedAbelianGroup,
};
use crate::error::{Error, Result};
use crate::multiplier::{check_hypotheses, multiplier_order_log};
use crate::pc::{pairs, PcPresentation};

#[derive(Debug, Clone)]
pub struct SquareOptions {
    /// Initial modulus exponent `K`.
    pub k: u32,
    pub max_k: u32,
    /// Maximum number of relation instances in the full-element tier.
    pub t3_budget: usize,
    /// Impose the exterior Jacobi instances (second tier).
    pub jacobi_tier: bool,
    /// Keep every imposed row for an exact integer check.
    pub keep_rows: bool,
    /// Stop as soon as the target order is reached. When off, every tier runs
    /// in full and the target is only compared at the end, so the final order
    /// is an upper bound obtained without reference to the target.
    pub stop_at_target: bool,
}

impl Default for SquareOptions {
    fn default() -> Self {
        Self { k: 3, max_k: 6, t3_budget: 200_000, jacobi_tier: true, keep_rows: false, stop_at_target: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Symbolic,
    Table,
}

#[derive(Debug, Clone)]
pub struct SquareResult {
    pub mode: Mode,
    pub engine: Engine,
    pub p: u32,
    pub structure: AbelianStructure,
    pub certified: bool,
    pub target_log: Option<u32>,
    pub presented_log: u32,
    pub relations_used: usize,
    pub diagnostics: Vec<String>,
    pub labels: Vec<String>,
    /// Column `j` is the image of generator `j` in `G′ ⊆ U` (coordinates on `u`).
    pub kappa: Vec<Vec<u32>>,
    /// `ker κ′ = M(G)` for the exterior square, `ker κ = J₂(G)` for the tensor square.
    pub kernel: AbelianStructure,
    /// `∇(G)`, tensor square only.
    pub nabla: Option<AbelianStructure>,
    pub(crate) lattice: ModularLattice,
    pub(crate) rows: Vec<Vec<i64>>,
    pres: PcPresentation,
    symbols: Option<SymbolSet>,
}

impl SquareResult {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        mode: Mode,
        engine: Engine,
        pres: PcPresentation,
        structure: AbelianStructure,
        certified: bool,
        target_log: Option<u32>,
        presented_log: u32,
        relations_used: usize,
        diagnostics: Vec<String>,
        labels: Vec<String>,
        kappa: Vec<Vec<u32>>,
        kernel: AbelianStructure,
        nabla: Option<AbelianStructure>,
        lattice: ModularLattice,
    ) -> Self {
        Self {
            mode,
            engine,
            p: pres.p(),
            structure,
            certified,
            target_log,
            presented_log,
            relations_used,
            diagnostics,
            labels,
            kappa,
            kernel,
            nabla,
            lattice,
            rows: Vec::new(),
            pres,
            symbols: None,
        }
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn symbols(&self) -> Option<SymbolSet> {
        self.symbols
    }

    pub fn ngens(&self) -> usize {
        self.labels.len()
    }

    /// Expansion map for this result's generators (symbolic engine only).
    pub fn expander(&self) -> Result<Expander<'_>> {
        match self.symbols {
            Some(s) => Ok(Expander::new(&self.pres, s.mode)),
            None => Err(Error::Usage("expansion is only available on symbolic results".into())),
        }
    }

    /// Whether a combination of generators is trivial in the presented group.
    pub fn is_zero(&self, row: &[i64]) -> bool {
        self.lattice.contains_i64(row)
    }

    pub fn is_zero_sum(&self, s: &FormalSum) -> bool {
        self.is_zero(&s.coeffs)
    }

    /// Image of a combination under κ (or κ′), in `U`-coordinates.
    pub fn kappa_of(&self, row: &[i64]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.pres.r()];
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                fp::axpy(&mut out, fp::from_i64(c, p), &self.kappa[j], p);
            }
        }
        out
    }

    /// Structure of the subgroup generated by the given combinations.
    pub fn subgroup_structure(&self, gens: &[Vec<i64>]) -> AbelianStructure {
        let gens: Vec<Vec<u64>> = gens.iter().map(|g| self.lattice.reduce_i64(g)).collect();
        self.lattice.subgroup_structure(&gens).structure(self.p as u64)
    }

    pub fn order_log(&self) -> u32 {
        self.structure.order_log(self.p as u64).expect("p-group")
    }

    /// Recomputes the structure from the kept rows by an exact Smith form over
    /// `Z`, independent of the modulus.
    pub fn exact_structure(&self) -> Result<AbelianStructure> {
        if self.rows.is_empty() && self.relations_used > 0 {
            return Err(Error::Usage("rows were not kept; rerun with keep_rows".into()));
        }
        let mut lat = IntegerLattice::new(self.ngens());
        for r in &self.rows {
            lat.insert_i64(r);
        }
        lat.cokernel()
    }
}

/// `log_p` of the abelianization exponents of an abelian presentation.
fn abelian_exponents(pres: &PcPresentation) -> Result<Vec<u32>> {
    let (d, r, p) = (pres.d(), pres.r(), pres.p() as i64);
    let mut g = PresentedAbelianGroup::new(d + r);
    for a in 0..r {
        let mut row = vec![0i64; d + r];
        row[d + a] = p;
        g.add_dense(&row);
    }
    for i in 0..d {
        let mut row = vec![0i64; d + r];
        row[i] = p;
        for (a, &c) in pres.pow(i).iter().enumerate() {
            row[d + a] -= c as i64;
        }
        g.add_dense(&row);
    }
    let s = g.structure()?;
    let mut e = crate::abelian::presented::p_exponents(&s, p as u64).ok_or(Error::Infinite)?;
    e.sort_unstable_by(|a, b| b.cmp(a));
    Ok(e)
}

/// `log_p |Γ(A)|` for `A = ⊕ Z/p^{e_i}`, `p` odd.
pub fn gamma_order_log(exponents: &[u32]) -> u32 {
    let mut total: u32 = exponents.iter().sum();
    for i in 0..exponents.len() {
        for j in 0..i {
            total += exponents[i].min(exponents[j]);
        }
    }
    total
}

/// Exact `log_p` of the order of the square, when it is known independently.
pub fn target_order_log(pres: &PcPresentation, mode: Mode) -> Result<Option<u32>> {
    let p = pres.p() as u64;
    let (wedge, gab) = if check_hypotheses(pres).is_ok() {
        let m = multiplier_order_log(pres)?;
        (m + pres.r() as u32, vec![1; pres.d()])
    } else if pres.is_abelian() {
        let e = abelian_exponents(pres)?;
        if e.is_empty() {
            (0, e)
        } else {
            let m = multiplier_abelian(&e, p)?;
            (m.order_log(p).expect("p-group"), e)
        }
    } else {
        return Ok(None);
    };
    Ok(Some(match mode {
        Mode::Exterior => wedge,
        Mode::Tensor => wedge + gamma_order_log(&gab),
    }))
}

type El = (Vec<u32>, Vec<u32>);

struct Relations<'a> {
    pres: &'a PcPresentation,
    ex: Expander<'a>,
}

impl<'a> Relations<'a> {
    fn mul(&self, g: &El, h: &El) -> El {
        self.pres.mul_raw(&g.0, &g.1, &h.0, &h.1)
    }

    /// `^g h = [g,h] h`.
    fn conj(&self, g: &El, h: &El) -> El {
        let mut b = h.1.clone();
        fp::axpy(&mut b, 1, &self.pres.comm_raw(&g.0, &h.0), self.pres.p());
        (h.0.clone(), b)
    }

    fn e(&mut self, g: &El, h: &El) -> Vec<i64> {
        self.ex.raw(&g.0, &g.1, &h.0, &h.1)
    }

    /// `gg′□h − (ᵍg′□ᵍh) − (g□h)`.
    fn left(&mut self, g: &El, g2: &El, h: &El) -> Vec<i64> {
        let gg2 = self.mul(g, g2);
        let (cg2, ch) = (self.conj(g, g2), self.conj(g, h));
        let mut out = self.e(&gg2, h);
        sub(&mut out, &self.e(&cg2, &ch));
        sub(&mut out, &self.e(g, h));
        out
    }

    /// `g□hh′ − (g□h) − (ʰg□ʰh′)`.
    fn right(&mut self, g: &El, h: &El, h2: &El) -> Vec<i64> {
        let hh2 = self.mul(h, h2);
        let (cg, ch2) = (self.conj(h, g), self.conj(h, h2));
        let mut out = self.e(g, &hh2);
        sub(&mut out, &self.e(g, h));
        sub(&mut out, &self.e(&cg, &ch2));
        out
    }

    fn diagonal(&mut self, g: &El) -> Vec<i64> {
        self.e(g, g)
    }
}

fn sub(out: &mut [i64], v: &[i64]) {
    for (o, x) in out.iter_mut().zip(v) {
        *o -= x;
    }
}

fn letter(pres: &PcPresentation, l: usize) -> El {
    let (d, r) = (pres.d(), pres.r());
    let (mut a, mut b) = (vec![0u32; d], vec![0u32; r]);
    if l < d {
        a[l] = 1;
    } else {
        b[l - d] = 1;
    }
    (a, b)
}

/// Column `j` = κ of symbol `j`: only `x_i□x_k` has a nonzero commutator.
fn kappa_columns(pres: &PcPresentation, symbols: &SymbolSet) -> Vec<Vec<u32>> {
    let d = pres.d();
    (0..symbols.dim())
        .map(|j| {
            let (l, z) = symbols.letters(j);
            if l < d && z < d {
                pres.comm(l, z)
            } else {
                vec![0; pres.r()]
            }
        })
        .collect()
}

/// Generators of `{v : κ(v) ≡ 0 mod p}` as integer rows.
pub(crate) fn kappa_kernel_generators(kappa: &[Vec<u32>], r: usize, p: u32) -> Vec<Vec<i64>> {
    let n = kappa.len();
    let eqs: Vec<Vec<u32>> = (0..r).map(|a| kappa.iter().map(|c| c[a]).collect()).collect();
    let mut gens: Vec<Vec<i64>> =
        fp::kernel(&eqs, n, p).into_iter().map(|v| v.into_iter().map(|x| x as i64).collect()).collect();
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = p as i64;
        gens.push(e);
    }
    gens
}

struct Imposer {
    lattice: ModularLattice,
    target: Option<u32>,
    stop: bool,
    used: usize,
    keep: bool,
    rows: Vec<Vec<i64>>,
}

impl Imposer {
    /// Returns `true` once the target is reached or passed.
    fn impose(&mut self, row: Vec<i64>) -> bool {
        self.used += 1;
        if row.iter().any(|&x| x != 0) {
            let v = self.lattice.reduce_i64(&row);
            if self.keep {
                self.rows.push(row);
            }
            self.lattice.insert(v);
        }
        self.done()
    }

    fn done(&self) -> bool {
        self.stop && self.target.is_some_and(|t| self.lattice.cokernel_order_log() <= t)
    }
}

enum Attempt {
    Finished(SquareResult),
    RaiseK(String),
}

pub fn square(pres: &PcPresentation, mode: Mode) -> Result<SquareResult> {
    square_with(pres, mode, &SquareOptions::default())
}

pub fn square_with(pres: &PcPresentation, mode: Mode, opts: &SquareOptions) -> Result<SquareResult> {
    if pres.p() == 2 {
        return Err(Error::Hypothesis("squares need an odd prime".into()));
    }
    let target = target_order_log(pres, mode)?;
    let mut k = opts.k;
    let mut notes = Vec::new();
    loop {
        match attempt(pres, mode, opts, k, target)? {
            Attempt::Finished(mut res) => {
                notes.append(&mut res.diagnostics);
                res.diagnostics = notes;
                return Ok(res);
            }
            Attempt::RaiseK(why) => {
                notes.push(why);
                k += 1;
                if k > opts.max_k {
                    return Err(Error::Inconsistent(format!(
                        "modulus p^{} still too small: {}",
                        opts.max_k,
                        notes.join("; ")
                    )));
                }
            }
        }
    }
}

fn attempt(pres: &PcPresentation, mode: Mode, opts: &SquareOptions, k: u32, target: Option<u32>) -> Result<Attempt> {
    let (d, r, p) = (pres.d(), pres.r(), pres.p());
    let symbols = SymbolSet::new(mode, d, r);
    let n = symbols.dim();
    let mut rel = Relations { pres, ex: Expander::new(pres, mode) };
    let mut imp = Imposer {
        lattice: ModularLattice::new(n, p as u64, k),
        target,
        stop: opts.stop_at_target,
        used: 0,
        keep: opts.keep_rows,
        rows: Vec::new(),
    };
    let mut diagnostics = Vec::new();

    // T1: letters, small powers and products of pairs of generators
    let letters: Vec<El> = (0..d + r).map(|l| letter(pres, l)).collect();
    let mut w: Vec<El> = letters.clone();
    for i in 0..d {
        let mut g = letters[i].clone();
        for _ in 2..p {
            g = rel.mul(&g, &letters[i]);
            w.push(g.clone());
        }
    }
    for (i, j) in pairs(d) {
        w.push(rel.mul(&letters[j], &letters[i]));
    }
    'tier1: {
        if mode == Mode::Exterior {
            for g in &w {
                let row = rel.diagonal(g);
                if imp.impose(row) {
                    break 'tier1;
                }
            }
        }
        for g in &w {
            for h in &w {
                for y in &letters {
                    let rows = [rel.left(g, y, h), rel.left(y, g, h), rel.right(g, h, y), rel.right(g, y, h)];
                    for row in rows {
                        if imp.impose(row) {
                            break 'tier1;
                        }
                    }
                }
            }
        }
    }
    diagnostics.push(format!(
        "tier 1: {} relations, order p^{}",
        imp.used,
        imp.lattice.cokernel_order_log()
    ));

    // T2: [x,y]∧z + [z,x]∧y + x∧[z,y] = 0
    if mode == Mode::Exterior && opts.jacobi_tier && !imp.done() {
        let before = imp.used;
        'tier2: for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    if imp.impose(rel.ex.cyclic_identity(x, y, z).coeffs) {
                        break 'tier2;
                    }
                }
            }
        }
        diagnostics.push(format!(
            "tier 2: {} relations, order p^{}",
            imp.used - before,
            imp.lattice.cokernel_order_log()
        ));
    }

    // T3: full elements in index order against letters
    if !imp.done() {
        let before = imp.used;
        let order = pres.order().filter(|&o| o <= u64::MAX as u128).map(|o| o as u64);
        if let Some(order) = order {
            'tier3: for gi in 0..order {
                let g = pres.decode(gi);
                if mode == Mode::Exterior && imp.impose(rel.diagonal(&g)) {
                    break 'tier3;
                }
                for hi in 0..order {
                    let h = pres.decode(hi);
                    for y in &letters {
                        let rows = [rel.left(&g, y, &h), rel.right(&g, &h, y)];
                        for row in rows {
                            if imp.impose(row) || imp.used - before >= opts.t3_budget {
                                break 'tier3;
                            }
                        }
                    }
                }
            }
        }
        diagnostics.push(format!(
            "tier 3: {} relations, order p^{}",
            imp.used - before,
            imp.lattice.cokernel_order_log()
        ));
    }

    let coker: ModularCokernel = imp.lattice.cokernel();
    let presented = coker.order_log();
    let certified = match target {
        Some(t) if presented == t => {
            if coker.saturated() {
                return Ok(Attempt::RaiseK(format!("order matched at K={k} but a Z/p^{k} factor remains")));
            }
            true
        }
        Some(t) if presented < t => {
            if k < opts.max_k {
                return Ok(Attempt::RaiseK(format!("order p^{presented} below target p^{t} at K={k}")));
            }
            return Err(Error::BelowTarget { presented, target: t });
        }
        Some(t) => {
            diagnostics.push(format!("stalled at p^{presented} above target p^{t}"));
            false
        }
        None => {
            diagnostics.push("no independent target order; result not certified".into());
            false
        }
    };
    if coker.saturated() {
        diagnostics.push(format!("cokernel has a Z/p^{k} factor; structure is only known modulo p^{k}"));
    }

    let kappa = kappa_columns(pres, &symbols);
    let kernel_gens = kappa_kernel_generators(&kappa, r, p);
    let kgens: Vec<Vec<u64>> = kernel_gens.iter().map(|g| imp.lattice.reduce_i64(g)).collect();
    let kernel = imp.lattice.subgroup_structure(&kgens).structure(p as u64);

    let nabla = if mode == Mode::Tensor {
        let reps = nabla_representatives(pres);
        reps.map(|reps| {
            let gens: Vec<Vec<u64>> =
                reps.iter().map(|g| imp.lattice.reduce_i64(&rel.diagonal(g))).collect();
            imp.lattice.subgroup_structure(&gens).structure(p as u64)
        })
    } else {
        None
    };

    Ok(Attempt::Finished(SquareResult {
        mode,
        engine: Engine::Symbolic,
        p,
        structure: coker.structure(p as u64),
        certified,
        target_log: target,
        presented_log: presented,
        relations_used: imp.used,
        diagnostics,
        labels: symbols.labels(),
        kappa,
        kernel,
        nabla,
        lattice: imp.lattice,
        rows: imp.rows,
        pres: pres.clone(),
        symbols: Some(symbols),
    }))
}

/// Elements whose squares generate `∇(G)`: `g⊗g` depends only on `gG′`, so
/// coset representatives `x^a` suffice when `G′ = U`; otherwise all elements.
fn nabla_representatives(pres: &PcPresentation) -> Option<Vec<El>> {
    let (d, r, p) = (pres.d(), pres.r(), pres.p());
    if check_hypotheses(pres).is_ok() {
        let n = (p as u64).checked_pow(d as u32)?;
        Some(
            (0..n)
                .map(|i| {
                    let (a, _) = pres.decode(i);
                    (a, vec![0; r])
                })
                .collect(),
        )
    } else {
        let order = pres.order().filter(|&o| o <= 6561)? as u64;
        Some((0..order).map(|i| pres.decode(i)).collect())
    }
}

/// `∇(G)` from every element, for regression against the coset version.
pub fn nabla_from_all_elements(res: &SquareResult) -> Result<AbelianStructure> {
    if res.mode != Mode::Tensor {
        return Err(Error::Usage("∇ lives in the tensor square".into()));
    }
    let mut ex = res.expander()?;
    let pres = res.presentation();
    let order = pres.order().ok_or(Error::Infinite)? as u64;
    let gens: Vec<Vec<i64>> = (0..order)
        .map(|i| {
            let (a, b) = pres.decode(i);
            ex.raw(&a, &b, &a, &b)
        })
        .collect();
    Ok(res.subgroup_structure(&gens))
}

/// `(J₂(G), ∇(G))` from a certified tensor square, with the identities
/// `|J₂| = |G⊗G|/|G′|` and `∇ ⊆ J₂` checked.
pub fn j2_and_nabla(res: &SquareResult) -> Result<(AbelianStructure, AbelianStructure)> {
    if res.mode != Mode::Tensor {
        return Err(Error::Usage("J₂ and ∇ need the tensor square".into()));
    }
    if !res.certified {
        return Err(Error::Uncertified);
    }
    let p = res.p as u64;
    let nabla = res.nabla.clone().ok_or_else(|| Error::Usage("∇ was not computed for this group".into()))?;
    let derived = res.presentation().comm_span().dim() as u32;
    let j2_log = res.kernel.order_log(p).expect("p-group");
    if j2_log + derived != res.order_log() {
        return Err(Error::Inconsistent(format!(
            "|J2| = p^{j2_log} but |G⊗G|/|G'| = p^{}",
            res.order_log() - derived
        )));
    }
    // ∇ ⊆ J₂ amounts to κ(g⊗g) = [g,g] = 1
    if let Ok(mut ex) = res.expander() {
        let pres = res.presentation();
        for i in 0..p.pow(pres.d() as u32) {
            let (a, _) = pres.decode(i);
            let b = vec![0; pres.r()];
            let v = ex.raw(&a, &b, &a, &b);
            if res.kappa_of(&v).iter().any(|&x| x != 0) {
                return Err(Error::Inconsistent("g⊗g has nontrivial commutator image".into()));
            }
        }
    }
    Ok((res.kernel.clone(), nabla))
}
