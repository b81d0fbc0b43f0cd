use specp_core::abelian::fp::Subspace;
use specp_core::multiplier::*;
use specp_core::pc::families::*;
use specp_core::pc::{GroupElement, PcPresentation};
use specp_core::wedge::{square_with, Mode, SquareOptions};

fn rank_full(d: usize, p: u32, t: usize) -> PcPresentation {
    rank_full_with_t(d, p, t).unwrap()
}

fn deficient(d: usize, p: u32, t: usize) -> Option<PcPresentation> {
    let alpha = vec![1; d * (d - 1) / 2 - 1];
    let base = rank_deficient(d, p, (1, 2), &alpha).unwrap();
    standard_power_table(&base, t).ok()
}

/// Ψ₂ assembled from commutators of group elements.
fn psi2_direct(pres: &PcPresentation, i: usize, j: usize, k: usize) -> Vec<u32> {
    let ts = TensorSpace::of(pres);
    let x = |n| GroupElement::generator(pres, n);
    let mut v = ts.zero();
    for (a, b, c) in [(i, j, k), (k, i, j), (j, k, i)] {
        let comm = x(a).commutator(&x(b)).unwrap();
        ts.add_basic(&mut v, comm.central_part(), c);
    }
    v
}

#[test]
fn psi2_vanishes_on_repeated_arguments() {
    for d in 3..=5 {
        for pres in [free_special(d, 3).unwrap(), deficient(d, 3, 0).unwrap()] {
            for i in 0..d {
                for k in 0..d {
                    for (a, b, c) in [(i, i, k), (i, k, i), (k, i, i)] {
                        assert!(psi2(&pres, a, b, c).iter().all(|&x| x == 0));
                    }
                }
            }
        }
    }
}

#[test]
fn psi2_matches_direct_expansion() {
    for pres in [free_special(3, 3).unwrap(), deficient(3, 3, 0).unwrap(), free_special(4, 5).unwrap()] {
        let d = pres.d();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    assert_eq!(psi2(&pres, i, j, k), psi2_direct(&pres, i, j, k));
                }
            }
        }
    }
    let fs = free_special(3, 3).unwrap();
    assert!(psi2(&fs, 0, 1, 2).iter().any(|&x| x != 0));
    let rd = deficient(3, 3, 0).unwrap();
    assert!(psi2(&rd, 0, 1, 2).iter().any(|&x| x != 0));
}

#[test]
fn psi2_image_examples() {
    assert_eq!(psi2_image(&free_special(3, 3).unwrap()).dim(), 1);
    assert_eq!(psi2_image(&deficient(4, 3, 0).unwrap()).dim(), 4);
    let flat = abelian(3, &[1, 1, 1]).unwrap();
    assert_eq!(psi2_image(&flat).dim(), 0);
}

#[test]
fn psi2_image_dimension_grid() {
    for d in 3..=5 {
        let want = d * (d - 1) * (d - 2) / 6;
        for t in 0..=d {
            let full = rank_full(d, 3, t);
            assert_eq!(psi2_image(&full).dim(), want, "rank-full d={d} t={t}");
            assert_eq!(ker_beta(&full).unwrap().intersection.dim(), 0, "rank-full d={d} t={t}");
            if let Some(def) = deficient(d, 3, t) {
                assert_eq!(psi2_image(&def).dim(), want, "deficient d={d} t={t}");
                assert_eq!(ker_beta(&def).unwrap().intersection.dim(), 0, "deficient d={d} t={t}");
            }
        }
    }
}

#[test]
fn power_tensor_examples() {
    let fs = free_special(3, 3).unwrap();
    assert_eq!(power_tensor_subgroup(&fs).dim(), 0);
    let nc = non_capable_witness(3, 3).unwrap();
    assert_eq!(power_tensor_subgroup(&nc).dim(), 3);
    assert_eq!(power_tensor_subgroup(&rank_full(3, 3, 3)).dim(), 6);
}

#[test]
fn power_tensor_dimension_sweep() {
    for p in [3, 5] {
        for d in [3, 4] {
            for t in 0..=d {
                let want = t * (2 * d - t + 1) / 2;
                let full = rank_full(d, p, t);
                let sub = power_tensor_subgroup(&full);
                assert_eq!(sub.dim(), want, "rank-full p={p} d={d} t={t}");
                assert_eq!(sub, power_tensor_by_cosets(&full));
                if let Some(def) = deficient(d, p, t) {
                    let sub = power_tensor_subgroup(&def);
                    assert_eq!(sub.dim(), want, "deficient p={p} d={d} t={t}");
                    assert_eq!(sub, power_tensor_by_cosets(&def));
                }
            }
        }
    }
}

#[test]
fn coset_representatives_suffice_up_to_order_3_5() {
    let mut groups = vec![
        extraspecial(3, Exponent::P).unwrap(),
        extraspecial(3, Exponent::P2).unwrap(),
        extraspecial_times_cyclic(3, Exponent::P2).unwrap(),
        extraspecial_central_product(3).unwrap(),
    ];
    for t in 0..=2 {
        groups.push(deficient(3, 3, t).unwrap());
    }
    for g in &groups {
        assert!(g.order_log() <= 5);
        assert_eq!(power_tensor_by_cosets(g), power_tensor_by_elements(g));
        assert_eq!(power_tensor_subgroup(g), power_tensor_by_elements(g));
    }
}

#[test]
fn ker_beta_examples() {
    let fs = ker_beta(&free_special(3, 3).unwrap()).unwrap();
    assert_eq!((fs.ker_beta.dim(), fs.m), (1, 0));
    let nc = ker_beta(&non_capable_witness(3, 3).unwrap()).unwrap();
    assert_eq!((nc.ker_beta.dim(), nc.intersection.dim()), (4, 0));
    let rd = ker_beta(&deficient(3, 3, 0).unwrap()).unwrap();
    assert_eq!((rd.ker_beta.dim(), rd.m), (1, 0));
    for kb in [&fs, &nc, &rd] {
        let dims = kb.dims();
        assert_eq!(dims.ker_beta + dims.intersection, dims.psi2_image + dims.power);
    }
}

#[test]
fn multiplier_examples() {
    assert_eq!(multiplier_order(&free_special(3, 3).unwrap()).unwrap().to_string(), "3^8");
    assert_eq!(multiplier_order_log(&deficient(3, 3, 0).unwrap()).unwrap(), 6);
    assert_eq!(multiplier_order_log(&non_capable_witness(3, 3).unwrap()).unwrap(), 5);
}

#[test]
fn hypotheses_are_enforced() {
    let z9 = abelian(3, &[2, 1]).unwrap();
    assert!(matches!(multiplier_order_log(&z9), Err(specp_core::Error::Hypothesis(_))));
}

/// Relations alone, with no stopping rule, must present a square of order at
/// most `|M|·|G′|`; with the multiplier correct this is an equality.
#[test]
fn multiplier_agrees_with_unstopped_exterior_square() {
    let opts = SquareOptions { stop_at_target: false, t3_budget: 2_000, ..Default::default() };
    let groups =
        [free_special(3, 3).unwrap(), non_capable_witness(3, 3).unwrap(), deficient(3, 3, 0).unwrap(), rank_full(3, 3, 2)];
    for g in &groups {
        let w = square_with(g, Mode::Exterior, &opts).unwrap();
        let m = multiplier_order_log(g).unwrap();
        assert_eq!(w.presented_log, m + g.r() as u32);
        assert!(w.certified);
        assert_eq!(w.kernel.order_log(3), Some(m));
    }
}

#[test]
fn maximal_multiplier_exactly_at_exponent_p() {
    for d in [3, 4] {
        let top = (d * (d - 1) * (d + 1) / 3) as u32;
        for t in 0..=d {
            let m = multiplier_order_log(&rank_full(d, 3, t)).unwrap();
            assert_eq!(m == top, t == 0, "d={d} t={t}");
            assert!(m <= top);
        }
    }
}

#[test]
fn quotient_power_rank_drops_by_at_most_one() {
    for t in 0..=3 {
        let g = rank_full(3, 3, t);
        let pw = g.pow_span();
        for k in lines(g.r(), 3) {
            let q = g.quotient_central(&Subspace::span([k.clone()], g.r(), 3)).unwrap();
            let t1 = q.pow_span().dim();
            assert!(t1 == t || t1 + 1 == t, "t={t} t1={t1}");
            // t drops exactly when K lies in G^p
            assert_eq!(t1 + 1 == t, pw.contains(&k));
        }
    }
}

fn lines(r: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for idx in 1..(p as u64).pow(r as u32) {
        let mut v = Vec::with_capacity(r);
        let mut rest = idx;
        for _ in 0..r {
            v.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

/// With `π_i = u_i` on FreeSpecial(3,p) the intersection is one-dimensional:
/// the vanishing intersection depends on the power table, not just on `t`.
#[test]
fn intersection_can_be_nonzero_for_other_power_tables() {
    let fs = free_special(3, 3).unwrap();
    let pow: Vec<Vec<u32>> = (0..3).map(|i| (0..3).map(|a| u32::from(a == i)).collect()).collect();
    let g = fs.with_powers(pow).unwrap();
    assert_eq!(g.pow_span().dim(), 3);
    let kb = ker_beta(&g).unwrap();
    assert_eq!((kb.power.dim(), kb.intersection.dim(), kb.ker_beta.dim()), (6, 1, 6));
    let m = multiplier_order_log(&g).unwrap();
    assert_eq!(m, 3);
    let canonical = multiplier_order_log(&rank_full(3, 3, 3)).unwrap();
    assert_eq!(canonical, 2);
    let opts = SquareOptions { stop_at_target: false, t3_budget: 2_000, ..Default::default() };
    let w = square_with(&g, Mode::Exterior, &opts).unwrap();
    assert_eq!(w.presented_log, m + 3);
}
