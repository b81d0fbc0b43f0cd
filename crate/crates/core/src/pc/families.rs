//! Constructors for the group families used throughout the crate.

use super::presentation::{pair_index, PcPresentation};
use crate::error::{Error, Result};

fn check_special_params(d: usize, p: u32) -> Result<()> {
    if p.is_multiple_of(2) {
        return Err(Error::Usage(format!("p = {p}: special families need an odd prime")));
    }
    if d < 3 {
        return Err(Error::Usage(format!("d = {d}: special families need at least 3 generators")));
    }
    Ok(())
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// The relatively free class-2 exponent-`p` group on `d` generators:
/// order `p^{d(d+1)/2}`, each commutator its own central generator.
pub fn free_special(d: usize, p: u32) -> Result<PcPresentation> {
    check_special_params(d, p)?;
    let r = d * (d - 1) / 2;
    PcPresentation::new(p, d, r, (0..r).map(|k| unit(r, k)).collect(), vec![vec![0; r]; d])
}

/// Pairs `(n1, n2)`, `n1 < n2`, 1-based, in lexicographic order.
pub fn lex_pairs(d: usize) -> Vec<(usize, usize)> {
    (1..=d).flat_map(|a| ((a + 1)..=d).map(move |b| (a, b))).collect()
}

/// Quotient of `free_special(d, p)` by `[x_i, x_j]^{-1} * prod [x_{n1}, x_{n2}]^{alpha}`,
/// where `(i, j)` is 1-based with `i < j` and `alpha` runs over the other
/// pairs `n1 < n2` in lexicographic order.
pub fn rank_deficient(d: usize, p: u32, pair: (usize, usize), alpha: &[u32]) -> Result<PcPresentation> {
    let free = free_special(d, p)?;
    let (i, j) = pair;
    if !(1 <= i && i < j && j <= d) {
        return Err(Error::Usage(format!("({i},{j}) is not a pair 1 <= i < j <= {d}")));
    }
    let others: Vec<(usize, usize)> = lex_pairs(d).into_iter().filter(|&q| q != pair).collect();
    if alpha.len() != others.len() {
        return Err(Error::Usage(format!("expected {} alpha coefficients, got {}", others.len(), alpha.len())));
    }
    // [x_a, x_b] with a < b is the inverse of the generator for (b, a); the signs cancel.
    let mut rel = vec![0u32; free.r()];
    rel[pair_index(j - 1, i - 1)] = 1;
    for (&(n1, n2), &c) in others.iter().zip(alpha) {
        let k = pair_index(n2 - 1, n1 - 1);
        rel[k] = (rel[k] + p - c % p) % p;
    }
    let s = crate::abelian::fp::Subspace::span([rel], free.r(), p);
    free.quotient_central(&s)
}

/// The power vectors `[x_2,x_1], [x_3,x_2], ..., [x_d,x_{d-1}], [x_d,x_1]`
/// assigned to `x_1..x_t` in turn.
pub fn standard_power_table(pres: &PcPresentation, t: usize) -> Result<PcPresentation> {
    let d = pres.d();
    if t > d {
        return Err(Error::Usage(format!("t = {t} exceeds d = {d}")));
    }
    let mut pow = vec![vec![0; pres.r()]; d];
    for (i, slot) in pow.iter_mut().enumerate().take(t) {
        *slot = if i + 1 < d { pres.comm(i + 1, i) } else { pres.comm(d - 1, 0) };
    }
    let g = pres.with_powers(pow)?;
    let got = g.pow_span().dim();
    if got != t {
        return Err(Error::Hypothesis(format!("standard power table reaches rank {got}, not {t}")));
    }
    Ok(g)
}

/// Rank-full group with `x_1^p = [x_2, x_1]` and all other powers trivial.
pub fn non_capable_witness(d: usize, p: u32) -> Result<PcPresentation> {
    standard_power_table(&free_special(d, p)?, 1)
}

/// Rank-full group with an explicit power table (vectors over the `d(d-1)/2` commutators).
pub fn exp_p2_family(d: usize, p: u32, pow: Vec<Vec<u32>>) -> Result<PcPresentation> {
    free_special(d, p)?.with_powers(pow)
}

pub fn rank_full_with_t(d: usize, p: u32, t: usize) -> Result<PcPresentation> {
    standard_power_table(&free_special(d, p)?, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exponent {
    P,
    P2,
}

/// Extraspecial group of order `p^3`.
pub fn extraspecial(p: u32, exponent: Exponent) -> Result<PcPresentation> {
    let pow = match exponent {
        Exponent::P => vec![vec![0], vec![0]],
        Exponent::P2 => vec![vec![1], vec![0]],
    };
    PcPresentation::new(p, 2, 1, vec![vec![1]], pow)
}

/// Extraspecial group of order `p^3` times `Z_p`, with `x_3` the extra factor.
pub fn extraspecial_times_cyclic(p: u32, exponent: Exponent) -> Result<PcPresentation> {
    let e = extraspecial(p, exponent)?;
    let mut pow = e.pow_table().to_vec();
    pow.push(vec![0]);
    PcPresentation::new(p, 3, 1, vec![vec![1], vec![0], vec![0]], pow)
}

/// Central product of the exponent-`p` extraspecial group with `Z_{p^2}`:
/// `x_3` central with `x_3^p = [x_2, x_1]`.
pub fn extraspecial_central_product(p: u32) -> Result<PcPresentation> {
    PcPresentation::new(p, 3, 1, vec![vec![1], vec![0], vec![0]], vec![vec![0], vec![0], vec![1]])
}

/// `Z_{p^{m_1}} + ... + Z_{p^{m_k}}` with every `m_i` in `{1, 2}`.
pub fn abelian(p: u32, exponents: &[u32]) -> Result<PcPresentation> {
    if exponents.iter().any(|&m| !(1..=2).contains(&m)) {
        return Err(Error::Usage("abelian factors must have order p or p^2".into()));
    }
    let d = exponents.len();
    let r = exponents.iter().filter(|&&m| m == 2).count();
    let mut next = 0;
    let pow = exponents
        .iter()
        .map(|&m| {
            if m == 2 {
                next += 1;
                unit(r, next - 1)
            } else {
                vec![0; r]
            }
        })
        .collect();
    PcPresentation::new(p, d, r, vec![vec![0; r]; d * d.saturating_sub(1) / 2], pow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(free_special(3, 3).unwrap().order_log(), 6);
        assert_eq!(free_special(4, 3).unwrap().order_log(), 10);
        assert!(free_special(2, 3).is_err());
        assert!(free_special(3, 2).is_err());
        let rd = rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap();
        assert_eq!(rd.order_log(), 5);
        assert!(rd.is_reduced());
        assert!(rank_deficient(3, 3, (2, 1), &[1, 1]).is_err());
        assert!(rank_deficient(3, 3, (1, 2), &[1]).is_err());
        assert_eq!(abelian(3, &[2, 1]).unwrap().order_log(), 3);
        assert_eq!(extraspecial_times_cyclic(3, Exponent::P2).unwrap().order_log(), 4);
        assert!(extraspecial_central_product(3).unwrap().is_reduced());
    }

    #[test]
    fn power_tables() {
        let w = non_capable_witness(3, 3).unwrap();
        assert_eq!(w.pow(0), &[1, 0, 0]);
        assert_eq!(w.pow(1), &[0, 0, 0]);
        for t in 0..=3 {
            assert_eq!(rank_full_with_t(3, 3, t).unwrap().pow_span().dim(), t);
        }
        let rd = rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap();
        assert!(standard_power_table(&rd, 2).is_ok());
        assert!(standard_power_table(&rd, 3).is_err());
    }
}
