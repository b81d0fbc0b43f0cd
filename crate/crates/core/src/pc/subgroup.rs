use serde::{Deserialize, Serialize};

use super::element::GroupElement;
use super::presentation::PcPresentation;
use crate::abelian::fp::{self, Subspace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupKind {
    Central,
    Power,
    Derived,
    Center,
    Frattini,
    ExteriorCenter,
}

/// A subgroup `S` with `S ∩ U` given by `central` and image in `G/U` given by
/// `main`. Each basis vector of `main` has a chosen lift in `lifts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDescription {
    pub kind: SubgroupKind,
    pub central: Subspace,
    pub main: Subspace,
    pub lifts: Vec<(Vec<u32>, Vec<u32>)>,
}

impl SubgroupDescription {
    /// A subgroup lying inside the central part `U`.
    pub fn central(kind: SubgroupKind, span: Subspace, d: usize) -> Self {
        let p = span.prime();
        Self { kind, central: span, main: Subspace::zero(d, p), lifts: Vec::new() }
    }

    pub fn order_log(&self) -> usize {
        self.central.dim() + self.main.dim()
    }

    pub fn is_inside_central_part(&self) -> bool {
        self.main.dim() == 0
    }

    pub fn contains(&self, g: &GroupElement<'_>) -> bool {
        let Some(coords) = self.main.coordinates(g.main()) else {
            return false;
        };
        let pres = g.presentation();
        let mut w = GroupElement::identity(pres);
        for (c, (a, b)) in coords.iter().zip(&self.lifts) {
            let lift = GroupElement::from_parts(pres, a.clone(), b.clone());
            w = &w * &lift.power(*c as i64);
        }
        let rest = &w.inverse() * g;
        debug_assert!(rest.is_central_word());
        self.central.contains(rest.central_part())
    }
}

pub fn derived_subgroup(pres: &PcPresentation) -> SubgroupDescription {
    SubgroupDescription::central(SubgroupKind::Derived, pres.comm_span(), pres.d())
}

/// `G^p`, generated by `p`-th powers; for odd `p` it is the span of the power vectors.
pub fn power_subgroup(pres: &PcPresentation) -> Result<SubgroupDescription> {
    if pres.p() == 2 {
        return Err(Error::Hypothesis("power subgroup needs an odd prime".into()));
    }
    Ok(SubgroupDescription::central(SubgroupKind::Power, pres.pow_span(), pres.d()))
}

/// `G'G^p`.
pub fn frattini(pres: &PcPresentation) -> Result<SubgroupDescription> {
    if pres.p() == 2 {
        return Err(Error::Hypothesis("Frattini computation needs an odd prime".into()));
    }
    Ok(SubgroupDescription::central(SubgroupKind::Frattini, pres.frattini_span(), pres.d()))
}

/// Main-exponent vectors `a` whose lifts commute with every generator.
pub fn centralizing_main_part(pres: &PcPresentation) -> Subspace {
    let (d, r, p) = (pres.d(), pres.r(), pres.p());
    // Column k of the system is [e_k, x_l] for each l; stack coordinates as equations.
    let mut eqs = Vec::new();
    for l in 0..d {
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|k| {
                let mut e = vec![0u32; d];
                e[k] = 1;
                let mut el = vec![0u32; d];
                el[l] = 1;
                pres.comm_raw(&e, &el)
            })
            .collect();
        for a in 0..r {
            eqs.push(cols.iter().map(|c| c[a]).collect::<Vec<u32>>());
        }
    }
    Subspace::span(fp::kernel(&eqs, d, p), d, p)
}

pub fn center(pres: &PcPresentation) -> SubgroupDescription {
    let main = centralizing_main_part(pres);
    let lifts = main.basis().iter().map(|a| (a.clone(), vec![0; pres.r()])).collect();
    SubgroupDescription { kind: SubgroupKind::Center, central: Subspace::full(pres.r(), pres.p()), main, lifts }
}

pub fn quotient_by_central(pres: &PcPresentation, s: &SubgroupDescription) -> Result<PcPresentation> {
    if !s.is_inside_central_part() {
        return Err(Error::Usage("quotient only by subgroups of the central part".into()));
    }
    pres.quotient_central(&s.central)
}

/// Summary of the shape of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub p: u32,
    pub d: usize,
    /// `log_p |G|`.
    pub order_log: usize,
    pub is_special: bool,
    pub exponent: u64,
    /// `log_p |G^p|`.
    pub t: usize,
    /// `log_p |G'|`.
    pub derived_rank: usize,
    pub center_log: usize,
    pub rank_full: bool,
    pub rank_deficient: bool,
    /// `d(G') <= d(d-1)/2`, which holds for any class-2 group on `d` generators.
    pub derived_bound_holds: bool,
}

pub fn structure_report(pres: &PcPresentation) -> Result<StructureReport> {
    let p = pres.p();
    if p == 2 {
        return Err(Error::Hypothesis("structure report needs an odd prime".into()));
    }
    let d = pres.d();
    let derived = pres.comm_span().dim();
    let t = pres.pow_span().dim();
    let phi = pres.frattini_span().dim();
    let z_main = centralizing_main_part(pres).dim();
    let full = d * d.saturating_sub(1) / 2;
    let exponent = match (pres.order_log(), t) {
        (0, _) => 1,
        (_, 0) => p as u64,
        _ => (p as u64).pow(2),
    };
    Ok(StructureReport {
        p,
        d,
        order_log: pres.order_log(),
        // G' = Z(G) = Phi(G) inside U; G/G' elementary iff powers fall into G'.
        is_special: derived > 0 && z_main == 0 && derived == pres.r() && phi == derived,
        exponent,
        t,
        derived_rank: derived,
        center_log: z_main + pres.r(),
        rank_full: derived == full && d >= 1,
        rank_deficient: full >= 1 && derived == full - 1,
        derived_bound_holds: derived <= full,
    })
}
