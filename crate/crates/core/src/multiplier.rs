//! `|M(G)|` through the five-term sequence
//! `G' ⊗ G/G' --β--> M(G) -> M(G/G') -> G' -> 1`, with
//! `ker β = Im Ψ₂ + <w^p ⊗ wG'>` computed as `F_p`-subspaces of `G' ⊗ G/G'`.

use serde::{Deserialize, Serialize};

use crate::abelian::fp::Subspace;
use crate::abelian::presented::multiplier_abelian;
use crate::error::{Error, Result};
use crate::pc::{elements, PcPresentation};

/// `U ⊗ F_p^d` with basis `u_a ⊗ x̄_k` at index `a * d + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorSpace {
    pub r: usize,
    pub d: usize,
    pub p: u32,
}

impl TensorSpace {
    pub fn of(pres: &PcPresentation) -> Self {
        Self { r: pres.r(), d: pres.d(), p: pres.p() }
    }

    pub fn dim(&self) -> usize {
        self.r * self.d
    }

    pub fn index(&self, a: usize, k: usize) -> usize {
        a * self.d + k
    }

    pub fn label(&self, idx: usize) -> (usize, usize) {
        (idx / self.d, idx % self.d)
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    /// `out += c * (u ⊗ x̄)` for `u ∈ F_p^r`, `x̄ ∈ F_p^d`.
    pub fn add_simple(&self, out: &mut [u32], u: &[u32], x: &[u32]) {
        for (a, &ua) in u.iter().enumerate() {
            if ua == 0 {
                continue;
            }
            for (k, &xk) in x.iter().enumerate() {
                let i = self.index(a, k);
                out[i] = (out[i] + ua * xk) % self.p;
            }
        }
    }

    pub fn add_basic(&self, out: &mut [u32], u: &[u32], k: usize) {
        for (a, &ua) in u.iter().enumerate() {
            let i = self.index(a, k);
            out[i] = (out[i] + ua) % self.p;
        }
    }
}

/// Hypotheses for the pipeline: odd `p` and `G' = U`, so that `G/G'` is
/// elementary abelian on `x̄_1..x̄_d` and `G'` is elementary abelian.
pub fn check_hypotheses(pres: &PcPresentation) -> Result<()> {
    if pres.p() == 2 {
        return Err(Error::Hypothesis("p = 2 is excluded".into()));
    }
    let derived = pres.comm_span().dim();
    if derived != pres.r() {
        return Err(Error::Hypothesis(format!(
            "G' has rank {derived} but the central part has rank {}: G/G' is not elementary abelian on the x_i",
            pres.r()
        )));
    }
    Ok(())
}

/// `Ψ₂(x̄_i ⊗ x̄_j ⊗ x̄_k) = [x_i,x_j] ⊗ x̄_k + [x_k,x_i] ⊗ x̄_j + [x_j,x_k] ⊗ x̄_i` (0-based).
pub fn psi2(pres: &PcPresentation, i: usize, j: usize, k: usize) -> Vec<u32> {
    let ts = TensorSpace::of(pres);
    let mut v = ts.zero();
    ts.add_basic(&mut v, &pres.comm(i, j), k);
    ts.add_basic(&mut v, &pres.comm(k, i), j);
    ts.add_basic(&mut v, &pres.comm(j, k), i);
    v
}

/// Span of `Ψ₂` over `i < j < k`, in lexicographic order.
pub fn psi2_image(pres: &PcPresentation) -> Subspace {
    let d = pres.d();
    let rows = (0..d).flat_map(|i| ((i + 1)..d).flat_map(move |j| ((j + 1)..d).map(move |k| (i, j, k))));
    let rows: Vec<Vec<u32>> = rows.map(|(i, j, k)| psi2(pres, i, j, k)).collect();
    Subspace::span(rows, TensorSpace::of(pres).dim(), pres.p())
}

/// `<w^p ⊗ wG'>` from the spanning set `π_i ⊗ x̄_i`, `π_i ⊗ x̄_k + π_k ⊗ x̄_i`.
pub fn power_tensor_subgroup(pres: &PcPresentation) -> Subspace {
    let ts = TensorSpace::of(pres);
    let d = pres.d();
    let mut rows = Vec::new();
    for i in 0..d {
        for k in i..d {
            let mut v = ts.zero();
            ts.add_basic(&mut v, pres.pow(i), k);
            if k != i {
                ts.add_basic(&mut v, pres.pow(k), i);
            }
            rows.push(v);
        }
    }
    Subspace::span(rows, ts.dim(), pres.p())
}

/// `<w^p ⊗ wG'>` with `w` over coset representatives `x_1^{a_1}...x_d^{a_d}`.
pub fn power_tensor_by_cosets(pres: &PcPresentation) -> Subspace {
    let ts = TensorSpace::of(pres);
    let p = pres.p() as u64;
    let count = p.pow(pres.d() as u32);
    let rows = (0..count).map(|mut idx| {
        let a: Vec<u32> = (0..pres.d())
            .map(|_| {
                let x = (idx % p) as u32;
                idx /= p;
                x
            })
            .collect();
        let mut v = ts.zero();
        ts.add_simple(&mut v, &pres.pth_power_raw(&a), &a);
        v
    });
    Subspace::span(rows.collect::<Vec<_>>(), ts.dim(), pres.p())
}

/// `<w^p ⊗ wG'>` with `w` over every element, `w^p` computed by collection.
pub fn power_tensor_by_elements(pres: &PcPresentation) -> Subspace {
    let ts = TensorSpace::of(pres);
    let rows = elements(pres).map(|w| {
        let wp = w.power(pres.p() as i64);
        let mut v = ts.zero();
        ts.add_simple(&mut v, wp.central_part(), w.main());
        v
    });
    Subspace::span(rows.collect::<Vec<_>>(), ts.dim(), pres.p())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerBetaDims {
    pub tensor_space: usize,
    pub psi2_image: usize,
    pub power: usize,
    pub ker_beta: usize,
    pub intersection: usize,
}

#[derive(Debug, Clone)]
pub struct KerBetaData {
    pub psi2_image: Subspace,
    pub power: Subspace,
    pub ker_beta: Subspace,
    pub intersection: Subspace,
    /// `dim P - dim(Im Ψ₂ ∩ P)`.
    pub m: usize,
    pub tensor_space: TensorSpace,
}

impl KerBetaData {
    pub fn dims(&self) -> KerBetaDims {
        KerBetaDims {
            tensor_space: self.tensor_space.dim(),
            psi2_image: self.psi2_image.dim(),
            power: self.power.dim(),
            ker_beta: self.ker_beta.dim(),
            intersection: self.intersection.dim(),
        }
    }
}

pub fn ker_beta(pres: &PcPresentation) -> Result<KerBetaData> {
    check_hypotheses(pres)?;
    let psi = psi2_image(pres);
    let power = power_tensor_subgroup(pres);
    let ker = psi.sum(&power);
    let inter = psi.intersection(&power);
    debug_assert_eq!(ker.dim() + inter.dim(), psi.dim() + power.dim());
    Ok(KerBetaData {
        m: power.dim() - inter.dim(),
        psi2_image: psi,
        power,
        ker_beta: ker,
        intersection: inter,
        tensor_space: TensorSpace::of(pres),
    })
}

/// `log_p |M(G)| = log_p |G' ⊗ G/G'| + log_p |M(G/G')| - log_p |G'| - dim ker β`.
pub fn multiplier_order_log(pres: &PcPresentation) -> Result<u32> {
    let kb = ker_beta(pres)?;
    let (d, r) = (pres.d(), pres.r());
    let m_ab = multiplier_abelian(&vec![1; d], pres.p() as u64)?;
    let m_ab_log = m_ab.order_log(pres.p() as u64).expect("p-group");
    let total = (r * d) as i64 + m_ab_log as i64 - r as i64 - kb.ker_beta.dim() as i64;
    if total < 0 {
        return Err(Error::Hypothesis(format!("negative multiplier exponent {total}")));
    }
    Ok(total as u32)
}

/// `p^e` with its parts kept apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub exponent: u32,
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.p, self.exponent)
    }
}

pub fn multiplier_order(pres: &PcPresentation) -> Result<PrimePower> {
    Ok(PrimePower { p: pres.p() as u64, exponent: multiplier_order_log(pres)? })
}
