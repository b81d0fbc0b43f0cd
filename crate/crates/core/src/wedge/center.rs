use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::square::{square, SquareResult};
use super::symbols::Mode;
use crate::abelian::fp::Subspace;
use crate::error::{Error, Result};
use crate::multiplier::multiplier_order_log;
use crate::pc::{center, structure_report, PcPresentation, SubgroupDescription, SubgroupKind};

/// Largest number of central elements scanned for the exterior center.
pub const CENTER_SCAN_CAP: u64 = 59_049;

type El = (Vec<u32>, Vec<u32>);

fn central_elements(pres: &PcPresentation) -> Result<Vec<El>> {
    let z = center(pres);
    let (d, r, p) = (pres.d(), pres.r(), pres.p() as u64);
    let m = z.main.dim();
    let count = p.checked_pow((m + r) as u32).filter(|&c| c <= CENTER_SCAN_CAP);
    let count = count.ok_or(Error::OrderCap { order: p.pow((m + r).min(40) as u32) as u128, cap: CENTER_SCAN_CAP as u128 })?;
    let basis = z.main.basis().to_vec();
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut rest = idx;
        let mut a = vec![0u32; d];
        for v in &basis {
            let c = (rest % p) as u32;
            rest /= p;
            crate::abelian::fp::axpy(&mut a, c, v, p as u32);
        }
        let b: Vec<u32> = (0..r)
            .map(|_| {
                let c = (rest % p) as u32;
                rest /= p;
                c
            })
            .collect();
        out.push((a, b));
    }
    Ok(out)
}

fn check_exterior(pres: &PcPresentation, res: &SquareResult) -> Result<()> {
    if res.mode != Mode::Exterior {
        return Err(Error::Usage("the exterior center needs the exterior square".into()));
    }
    if res.presentation() != pres {
        return Err(Error::Usage("square result belongs to a different presentation".into()));
    }
    if !res.certified {
        return Err(Error::Uncertified);
    }
    Ok(())
}

fn describe(pres: &PcPresentation, members: &[El]) -> SubgroupDescription {
    let (d, r, p) = (pres.d(), pres.r(), pres.p());
    let central = Subspace::span(members.iter().filter(|(a, _)| a.iter().all(|&x| x == 0)).map(|(_, b)| b.clone()), r, p);
    let main = Subspace::span(members.iter().map(|(a, _)| a.clone()), d, p);
    let by_main: HashMap<&Vec<u32>, &Vec<u32>> = members.iter().map(|(a, b)| (a, b)).collect();
    let lifts = main.basis().iter().map(|a| (a.clone(), by_main[a].clone())).collect();
    SubgroupDescription { kind: SubgroupKind::ExteriorCenter, central, main, lifts }
}

/// `Z^∧(G)`: central `g` with `g∧x_k = 0` for every generator. For central
/// `g`, `g∧hk = g∧h + g∧[h,k] + g∧k` and `g∧[h,k] = 0`, so generators suffice.
pub fn exterior_center(pres: &PcPresentation, res: &SquareResult) -> Result<SubgroupDescription> {
    check_exterior(pres, res)?;
    let mut ex = res.expander()?;
    let gens: Vec<El> = (0..pres.d())
        .map(|i| {
            let mut a = vec![0u32; pres.d()];
            a[i] = 1;
            (a, vec![0; pres.r()])
        })
        .chain((0..pres.r()).map(|j| {
            let mut b = vec![0u32; pres.r()];
            b[j] = 1;
            (vec![0; pres.d()], b)
        }))
        .collect();
    let members: Vec<El> = central_elements(pres)?
        .into_iter()
        .filter(|(a, b)| gens.iter().all(|(ha, hb)| res.is_zero(&ex.raw(a, b, ha, hb))))
        .collect();
    Ok(describe(pres, &members))
}

/// The same subgroup tested against every element of `G`; for regression.
pub fn exterior_center_full(pres: &PcPresentation, res: &SquareResult) -> Result<SubgroupDescription> {
    check_exterior(pres, res)?;
    let mut ex = res.expander()?;
    let order = pres.order().ok_or(Error::Infinite)? as u64;
    let all: Vec<El> = (0..order).map(|i| pres.decode(i)).collect();
    let members: Vec<El> = all
        .iter()
        .filter(|(a, b)| all.iter().all(|(ha, hb)| res.is_zero(&ex.raw(a, b, ha, hb))))
        .cloned()
        .collect();
    Ok(describe(pres, &members))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub applicable: bool,
    pub consistent: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapabilityReport {
    pub capable: bool,
    /// `log_p |Z^∧(G)|`.
    pub exterior_center_log: usize,
    /// A nontrivial element of `Z^∧(G)` in normal form, when there is one.
    pub witness: Option<String>,
    pub cross_checks: Vec<CrossCheck>,
}

/// Most order-`p` quotients examined by the multiplier comparison.
pub const QUOTIENT_CHECK_CAP: u64 = 4000;

pub fn capability_report(pres: &PcPresentation) -> Result<CapabilityReport> {
    let wedge = square(pres, Mode::Exterior)?;
    capability_report_with(pres, &wedge)
}

pub fn capability_report_with(pres: &PcPresentation, wedge: &SquareResult) -> Result<CapabilityReport> {
    let z = exterior_center(pres, wedge)?;
    let capable = z.order_log() == 0;
    let witness = if capable {
        None
    } else {
        let (a, b) = match z.lifts.first() {
            Some((a, b)) => (a.clone(), b.clone()),
            None => (vec![0; pres.d()], z.central.basis()[0].clone()),
        };
        Some(crate::pc::GroupElement::new(pres, a, b)?.to_string())
    };
    let mut checks = Vec::new();
    let rep = structure_report(pres)?;
    let p = pres.p() as u64;

    // (a) |M(G/K)| < |M(G)| for every order-p central K forces capability
    {
        let applicable_shape = rep.center_log == pres.r() && pres.r() > 0;
        let count = (p.pow(pres.r() as u32) - 1) / (p - 1);
        let mut c = CrossCheck { name: "quotient-multiplier".into(), applicable: false, consistent: true, detail: String::new() };
        if !applicable_shape {
            c.detail = "Z(G) is not the central part".into();
        } else if count > QUOTIENT_CHECK_CAP {
            c.detail = format!("{count} quotients exceed the cap {QUOTIENT_CHECK_CAP}");
        } else if let Ok(m) = multiplier_order_log(pres) {
            let mut smaller = 0u64;
            let mut sizes = std::collections::BTreeSet::new();
            for line in projective_points(pres.r(), pres.p()) {
                let k = Subspace::span([line], pres.r(), pres.p());
                let q = pres.quotient_central(&k)?;
                let mq = multiplier_order_log(&q)?;
                sizes.insert(mq);
                if mq < m {
                    smaller += 1;
                }
            }
            c.applicable = true;
            let all_smaller = smaller == count;
            c.consistent = !all_smaller || capable;
            c.detail = format!(
                "|M(G)| = p^{m}; {smaller} of {count} order-p quotients have smaller multiplier; quotient multipliers p^{:?}",
                sizes
            );
        } else {
            c.detail = "multiplier unavailable".into();
        }
        checks.push(c);
    }

    // (b) exponent p² with elementary exterior square forces non-capability
    {
        let elementary = wedge.structure.is_elementary(p);
        let applicable = rep.exponent == p * p && elementary;
        checks.push(CrossCheck {
            name: "exp-p2-elementary-wedge".into(),
            applicable,
            consistent: !applicable || !capable,
            detail: format!("exponent {}, exterior square {}", rep.exponent, wedge.structure),
        });
    }

    // (c) rank-full special groups are capable exactly when t != 1
    {
        let applicable = rep.is_special && rep.rank_full;
        let predicted = rep.t != 1;
        checks.push(CrossCheck {
            name: "rank-full-power-rank".into(),
            applicable,
            consistent: !applicable || predicted == capable,
            detail: format!("t = {}, predicted {}", rep.t, if predicted { "capable" } else { "non-capable" }),
        });
    }

    Ok(CapabilityReport { capable, exterior_center_log: z.order_log(), witness, cross_checks: checks })
}

/// One nonzero vector per line of `F_p^r`: first nonzero coordinate 1.
fn projective_points(r: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        for idx in 0..(p as u64).pow(free as u32) {
            let mut v = vec![0u32; r];
            v[lead] = 1;
            let mut rest = idx;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            out.push(v);
        }
    }
    out
}
