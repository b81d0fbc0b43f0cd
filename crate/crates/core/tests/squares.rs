use specp_core::abelian::{multiplier_abelian, AbelianStructure};
use specp_core::multiplier::multiplier_order_log;
use specp_core::pc::families::*;
use specp_core::pc::{center, GroupElement, PcPresentation};
use specp_core::wedge::oracle::oracle_from_table;
use specp_core::wedge::*;
use specp_core::Error;

fn z(p: u64, rank: usize) -> AbelianStructure {
    AbelianStructure::elementary(p, rank)
}

fn oracle_groups() -> Vec<(&'static str, PcPresentation)> {
    vec![
        ("Z3", abelian(3, &[1]).unwrap()),
        ("Z3^2", abelian(3, &[1, 1]).unwrap()),
        ("Z9+Z3", abelian(3, &[2, 1]).unwrap()),
        ("E27 exp 3", extraspecial(3, Exponent::P).unwrap()),
        ("E27 exp 9", extraspecial(3, Exponent::P2).unwrap()),
        ("E27(3) x Z3", extraspecial_times_cyclic(3, Exponent::P).unwrap()),
        ("E27(9) x Z3", extraspecial_times_cyclic(3, Exponent::P2).unwrap()),
        ("E27 o Z9", extraspecial_central_product(3).unwrap()),
    ]
}

#[test]
fn symbolic_squares_match_the_table_oracle() {
    for (name, g) in oracle_groups() {
        for mode in [Mode::Exterior, Mode::Tensor] {
            let s = square(&g, mode).unwrap();
            let o = oracle_square(&g, mode).unwrap();
            assert!(s.certified, "{name} {mode}: {:?}", s.diagnostics);
            assert_eq!(s.structure, o.structure, "{name} {mode}");
            assert_eq!(s.kernel, o.kernel, "{name} {mode} kernel");
            assert_eq!(s.nabla, o.nabla, "{name} {mode} nabla");
        }
    }
}

#[test]
fn abelian_exterior_square_is_the_multiplier() {
    for (exps, want) in [(vec![1], vec![]), (vec![1, 1], vec![3]), (vec![2, 1], vec![3])] {
        let g = abelian(3, &exps).unwrap();
        let w = square(&g, Mode::Exterior).unwrap();
        let m = multiplier_abelian(&exps, 3).unwrap();
        assert_eq!(w.structure, m);
        assert_eq!(w.structure, AbelianStructure::from_cyclic_orders(&want));
        assert_eq!(w.kernel, m);
    }
}

#[test]
fn expansion_agrees_with_the_table_oracle() {
    for (name, g) in oracle_groups() {
        for mode in [Mode::Exterior, Mode::Tensor] {
            let table = OracleTable::new(&g, mode).unwrap();
            let o = oracle_from_table(&table).unwrap();
            let s = square(&g, mode).unwrap();
            let syms = s.symbols().unwrap();
            let letter_index = |l: usize| {
                if l < g.d() {
                    GroupElement::generator(&g, l).index()
                } else {
                    GroupElement::central(&g, l - g.d()).index()
                }
            };
            let images: Vec<Vec<i64>> = (0..syms.dim())
                .map(|j| {
                    let (l, m) = syms.letters(j);
                    table.tau(letter_index(l), letter_index(m))
                })
                .collect();
            let mut ex = s.expander().unwrap();
            let n = table.order() as u64;
            for gi in 0..n {
                for hi in (0..n).step_by(3) {
                    let (ge, he) = (GroupElement::from_index(&g, gi), GroupElement::from_index(&g, hi));
                    let e = ex.expand(&ge, &he);
                    let mut row = table.tau(gi, hi);
                    for (j, &c) in e.coeffs.iter().enumerate() {
                        for (x, y) in row.iter_mut().zip(&images[j]) {
                            *x -= c * y;
                        }
                    }
                    assert!(o.is_zero(&row), "{name} {mode}: {ge} . {he}");
                }
            }
        }
    }
}

#[test]
fn expansion_examples() {
    let g = free_special(3, 3).unwrap();
    let mut ex = Expander::new(&g, Mode::Tensor);
    let one = GroupElement::identity(&g);
    let x1 = GroupElement::generator(&g, 0);
    let x2 = GroupElement::generator(&g, 1);
    assert!(ex.expand(&one, &x2).is_empty());
    assert_eq!(ex.expand(&x1, &x2).terms(), vec![("x1*x2".to_string(), 1)]);

    // x1^3 * x2 telescopes into 3 (x1*x2) + (0+1+2) (x1*[x1,x2]) in an exp-9 group
    let e = extraspecial(3, Exponent::P2).unwrap();
    let s = square(&e, Mode::Tensor).unwrap();
    let mut ex = s.expander().unwrap();
    let (y1, y2) = (GroupElement::generator(&e, 0), GroupElement::generator(&e, 1));
    let c = y1.commutator(&y2).unwrap();
    let telescoped = (0..3)
        .map(|k| ex.expand(&y1, &y1.power(k).conjugate(&y2).unwrap()))
        .fold(FormalSum::zero(s.symbols().unwrap()), |a, b| a.add(&b));
    let closed = ex.expand(&y1, &y2).scale(3).add(&ex.expand(&y1, &c).scale(3));
    // different representatives of the same element
    assert!(s.is_zero_sum(&telescoped.add(&closed.scale(-1))));
    assert_eq!(closed.coefficient("x1*x2"), 3);
    let direct = ex.expand(&y1.power(3), &y2);
    assert!(s.is_zero(&direct.add(&closed.scale(-1)).coeffs));
}

#[test]
fn special_family_squares() {
    let fs = free_special(3, 3).unwrap();
    let w = square(&fs, Mode::Exterior).unwrap();
    assert_eq!((w.structure.clone(), w.certified), (z(3, 11), true));
    assert_eq!(w.kernel, z(3, 8));
    let t = square(&fs, Mode::Tensor).unwrap();
    assert_eq!((t.structure.clone(), t.certified), (z(3, 17), true));
    let (j2, nabla) = j2_and_nabla(&t).unwrap();
    assert_eq!(nabla, z(3, 6));
    assert_eq!(j2.order_log(3), Some(14));

    let nc = non_capable_witness(3, 3).unwrap();
    let w = square(&nc, Mode::Exterior).unwrap();
    assert_eq!(w.structure, z(3, 8));
}

#[test]
fn oracle_examples() {
    let e = extraspecial(3, Exponent::P).unwrap();
    let o = oracle_square(&e, Mode::Exterior).unwrap();
    assert_eq!(o.structure.order_log(3), Some(3));
    assert_eq!(o.kernel.order_log(3), Some(2));
    let z3sq = abelian(3, &[1, 1]).unwrap();
    assert_eq!(oracle_square(&z3sq, Mode::Exterior).unwrap().structure, z(3, 1));
    let fs = free_special(3, 3).unwrap();
    assert!(matches!(oracle_square(&fs, Mode::Exterior), Err(Error::OrderCap { .. })));
}

#[test]
fn trivial_group_has_trivial_squares() {
    let g = PcPresentation::new(3, 0, 0, vec![], vec![]).unwrap();
    for mode in [Mode::Exterior, Mode::Tensor] {
        let s = square(&g, mode).unwrap();
        assert!(s.structure.is_trivial() && s.certified);
        assert!(oracle_square(&g, mode).unwrap().structure.is_trivial());
    }
    let t = square(&g, Mode::Tensor).unwrap();
    let (j2, nabla) = j2_and_nabla(&t).unwrap();
    assert!(j2.is_trivial() && nabla.is_trivial());
}

#[test]
fn order_identities_on_certified_results() {
    let mut groups = vec![free_special(3, 3).unwrap(), free_special(4, 3).unwrap(), non_capable_witness(3, 3).unwrap()];
    for t in 0..=3 {
        groups.push(rank_full_with_t(3, 3, t).unwrap());
    }
    for t in 0..=2 {
        groups.push(standard_power_table(&rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap(), t).unwrap());
    }
    groups.push(free_special(3, 5).unwrap());
    for g in &groups {
        let (d, r) = (g.d() as u32, g.r() as u32);
        let p = g.p() as u64;
        let m = multiplier_order_log(g).unwrap();
        let w = square(g, Mode::Exterior).unwrap();
        let t = square(g, Mode::Tensor).unwrap();
        assert!(w.certified && t.certified);
        assert_eq!(w.order_log(), m + r);
        assert_eq!(w.kernel.order_log(p), Some(m));
        assert_eq!(t.order_log(), w.order_log() + d * (d + 1) / 2);
        assert_eq!(t.nabla, Some(z(p, (d * (d + 1) / 2) as usize)));
        let (j2, _) = j2_and_nabla(&t).unwrap();
        assert_eq!(j2.order_log(p), Some(m + d * (d + 1) / 2));
        // κ′ maps onto G′
        let image = specp_core::abelian::fp_span_dim(&w.kappa, g.p());
        assert_eq!(image, g.comm_span().dim());
        // the square is presented as an abelian group, so commutators of its elements vanish
        assert!(w.structure.check_chain().is_ok());
    }
}

#[test]
fn nabla_from_cosets_matches_all_elements() {
    let groups =
        [free_special(3, 3).unwrap(), non_capable_witness(3, 3).unwrap(), extraspecial_central_product(3).unwrap()];
    for g in &groups {
        let t = square(g, Mode::Tensor).unwrap();
        assert_eq!(t.nabla.clone().unwrap(), nabla_from_all_elements(&t).unwrap());
    }
}

#[test]
fn exact_integer_check_per_family() {
    let opts = SquareOptions { keep_rows: true, ..Default::default() };
    let groups = [
        (free_special(3, 3).unwrap(), Mode::Exterior),
        (non_capable_witness(3, 3).unwrap(), Mode::Tensor),
        (standard_power_table(&rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap(), 1).unwrap(), Mode::Exterior),
        (rank_full_with_t(3, 3, 2).unwrap(), Mode::Exterior),
        (extraspecial(3, Exponent::P2).unwrap(), Mode::Tensor),
    ];
    for (g, mode) in &groups {
        let s = square_with(g, *mode, &opts).unwrap();
        assert!(s.certified);
        assert_eq!(s.exact_structure().unwrap(), s.structure);
    }
}

#[test]
fn three_term_identity_holds_for_all_generator_triples() {
    for d in [3, 4] {
        let groups = [
            free_special(d, 3).unwrap(),
            non_capable_witness(d, 3).unwrap(),
            rank_full_with_t(d, 3, 2).unwrap(),
            rank_deficient(d, 3, (1, 2), &vec![1; d * (d - 1) / 2 - 1]).unwrap(),
        ];
        for g in &groups {
            for mode in [Mode::Exterior, Mode::Tensor] {
                let s = square(g, mode).unwrap();
                let mut ex = s.expander().unwrap();
                let mut swapped_fails = 0;
                for x in 0..d {
                    for y in 0..d {
                        for w in 0..d {
                            assert!(s.is_zero_sum(&ex.cyclic_identity(x, y, w)));
                            if !s.is_zero_sum(&ex.swapped_identity(x, y, w)) {
                                swapped_fails += 1;
                            }
                        }
                    }
                }
                // the variant with [z,y]∧x in the middle reduces to [x,y]∧z = 1, which fails
                assert!(swapped_fails > 0);
            }
        }
    }
}

#[test]
fn exterior_squares_of_rank_full_families() {
    // ½t(t−1) cyclic factors of order p² for t < d
    for d in [3, 4] {
        for t in 0..d.min(3) {
            let g = rank_full_with_t(d, 3, t).unwrap();
            let w = square(&g, Mode::Exterior).unwrap();
            assert_eq!(w.structure.count_of(9), t * t.saturating_sub(1) / 2, "d={d} t={t}");
        }
    }
    // t = d = 3: two factors of order 9 in a group of order 3^5
    let w = square(&rank_full_with_t(3, 3, 3).unwrap(), Mode::Exterior).unwrap();
    assert_eq!(w.structure, AbelianStructure::from_cyclic_orders(&[3, 9, 9]));
}

#[test]
fn exterior_center_examples() {
    let fs = free_special(3, 3).unwrap();
    let w = square(&fs, Mode::Exterior).unwrap();
    assert_eq!(exterior_center(&fs, &w).unwrap().order_log(), 0);

    let nc = non_capable_witness(3, 3).unwrap();
    let w = square(&nc, Mode::Exterior).unwrap();
    let zc = exterior_center(&nc, &w).unwrap();
    assert!(zc.order_log() > 0);
    let x1p = GroupElement::generator(&nc, 0).power(3);
    assert!(!x1p.is_identity());
    assert!(zc.contains(&x1p));

    let z3sq = abelian(3, &[1, 1]).unwrap();
    let w = square(&z3sq, Mode::Exterior).unwrap();
    assert_eq!(exterior_center(&z3sq, &w).unwrap().order_log(), 0);
}

#[test]
fn exterior_center_from_generators_matches_full_enumeration() {
    let mut groups: Vec<PcPresentation> = oracle_groups().into_iter().map(|(_, g)| g).collect();
    for t in 0..=2 {
        groups.push(standard_power_table(&rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap(), t).unwrap());
    }
    for g in &groups {
        assert!(g.order_log() <= 5);
        let w = square(g, Mode::Exterior).unwrap();
        let fast = exterior_center(g, &w).unwrap();
        let full = exterior_center_full(g, &w).unwrap();
        assert_eq!((fast.central.clone(), fast.main.clone()), (full.central.clone(), full.main.clone()));
        // Z^∧(G) ⊆ Z(G)
        let zg = center(g);
        for (a, b) in &fast.lifts {
            assert!(zg.contains(&GroupElement::new(g, a.clone(), b.clone()).unwrap()));
        }
        assert!(fast.order_log() <= zg.order_log());
    }
}

#[test]
fn capability_reports() {
    let fs = free_special(3, 3).unwrap();
    let rep = capability_report(&fs).unwrap();
    assert!(rep.capable && rep.witness.is_none());
    let quot = &rep.cross_checks[0];
    assert!(quot.applicable && quot.consistent);
    assert!(quot.detail.contains("13 of 13"), "{}", quot.detail);
    assert!(quot.detail.contains("p^{6}"), "{}", quot.detail);

    let nc = non_capable_witness(3, 3).unwrap();
    let rep = capability_report(&nc).unwrap();
    assert!(!rep.capable && rep.witness.is_some());
    let kj = rep.cross_checks.iter().find(|c| c.name == "exp-p2-elementary-wedge").unwrap();
    assert!(kj.applicable && kj.consistent);

    for t in 0..=3 {
        let g = rank_full_with_t(3, 3, t).unwrap();
        let rep = capability_report(&g).unwrap();
        assert_eq!(rep.capable, t != 1, "t={t}");
        assert!(rep.cross_checks.iter().all(|c| c.consistent), "{:?}", rep.cross_checks);
    }
}

#[test]
fn groups_without_a_target_are_uncertified() {
    // G′ = <u1> but U = <u1, u2>: the multiplier pipeline does not apply
    let g = PcPresentation::new(3, 2, 2, vec![vec![1, 0]], vec![vec![0, 1], vec![0, 0]]).unwrap();
    let opts = SquareOptions { t3_budget: 500, ..Default::default() };
    let t = square_with(&g, Mode::Tensor, &opts).unwrap();
    assert!(!t.certified);
    assert_eq!(t.target_log, None);
    assert!(matches!(j2_and_nabla(&t), Err(Error::Uncertified)));
    let w = square_with(&g, Mode::Exterior, &opts).unwrap();
    assert!(matches!(exterior_center(&g, &w), Err(Error::Uncertified)));
}
