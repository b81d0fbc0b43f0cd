use std::collections::HashSet;

use proptest::prelude::*;
use specp_core::pc::families::{self, Exponent};
use specp_core::pc::{self, elements, GroupElement, PcPresentation};

fn test_groups() -> Vec<(&'static str, PcPresentation)> {
    vec![
        ("free_special(3,3)", families::free_special(3, 3).unwrap()),
        ("free_special(3,5)", families::free_special(3, 5).unwrap()),
        ("free_special(4,3)", families::free_special(4, 3).unwrap()),
        ("rank_deficient(3,3)", families::rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap()),
        ("rank_deficient(4,3)", families::rank_deficient(4, 3, (2, 3), &[1, 0, 2, 0, 1]).unwrap()),
        ("non_capable_witness(3,3)", families::non_capable_witness(3, 3).unwrap()),
        ("rank_full_t3(3,5)", families::rank_full_with_t(3, 5, 3).unwrap()),
        ("extraspecial_p2(3)", families::extraspecial(3, Exponent::P2).unwrap()),
        ("central_product(3)", families::extraspecial_central_product(3).unwrap()),
        ("abelian(3;2,1)", families::abelian(3, &[2, 1]).unwrap()),
    ]
}

fn gen(pres: &PcPresentation, i: usize) -> GroupElement<'_> {
    GroupElement::generator(pres, i)
}

/// The multiplication is a group law satisfying the defining relations and has
/// `p^{d+r}` elements, so it realises the presented group.
#[test]
fn collection_is_the_presented_group_exhaustive() {
    for (name, g) in test_groups().into_iter().filter(|(_, g)| g.order_log() <= 5) {
        let all: Vec<_> = elements(&g).collect();
        for x in &all {
            for y in &all {
                let xy = x * y;
                for z in all.iter().step_by(7) {
                    assert_eq!(&xy * z, x * &(y * z), "{name}: associativity");
                }
            }
        }
        for i in 0..g.d() {
            assert_eq!(gen(&g, i).power(g.p() as i64), GroupElement::from_central(&g, g.pow(i).to_vec()), "{name}");
            for j in 0..i {
                let c = gen(&g, i).commutator(&gen(&g, j)).unwrap();
                let direct = &(&(&gen(&g, i) * &gen(&g, j)) * &gen(&g, i).inverse()) * &gen(&g, j).inverse();
                assert_eq!(c, direct, "{name}: [x{},x{}]", i + 1, j + 1);
                assert_eq!(c.central_part(), g.comm(i, j).as_slice());
            }
        }
        let distinct: HashSet<u64> = all.iter().map(GroupElement::index).collect();
        assert_eq!(distinct.len() as u128, g.order().unwrap());
    }
}

#[test]
fn multiply_x2_x1_in_free_special() {
    let g = families::free_special(3, 3).unwrap();
    let prod = &gen(&g, 1) * &gen(&g, 0);
    assert_eq!(prod.main(), &[1, 1, 0]);
    // x2 x1 = [x2,x1] x1 x2 with [g,h] = g h g^-1 h^-1
    assert_eq!(prod.central_part(), &[1, 0, 0]);
    let other = families::free_special(4, 3).unwrap();
    assert!(gen(&g, 0).multiply(&gen(&other, 0)).is_err());
}

#[test]
fn powers_of_named_elements() {
    let g = families::free_special(3, 3).unwrap();
    assert!(gen(&g, 0).power(3).is_identity());
    let w = families::non_capable_witness(3, 3).unwrap();
    let x1p = gen(&w, 0).power(3);
    let c = gen(&w, 1).commutator(&gen(&w, 0)).unwrap();
    assert_eq!(x1p, c);
    assert_eq!(x1p, gen(&w, 0).commutator(&gen(&w, 1)).unwrap().inverse());
}

#[test]
fn bilinearity_exhaustive_on_free_special() {
    let g = families::free_special(3, 3).unwrap();
    let all: Vec<_> = elements(&g).collect();
    let gens: Vec<_> = (0..3).map(|i| gen(&g, i)).collect();
    for x in &all {
        for y in all.iter().step_by(5) {
            for z in &gens {
                let lhs = (x * y).commutator(z).unwrap();
                let rhs = &x.commutator(z).unwrap() * &y.commutator(z).unwrap();
                assert_eq!(lhs, rhs);
            }
            assert!(x.commutator(x).unwrap().is_identity());
        }
    }
}

#[test]
fn subgroups_of_families() {
    let f = families::free_special(3, 3).unwrap();
    assert_eq!(pc::derived_subgroup(&f).order_log(), 3);
    assert_eq!(pc::center(&f).order_log(), 3);
    let rd = families::rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap();
    assert_eq!(pc::derived_subgroup(&rd).order_log(), 2);
    let ab = families::abelian(3, &[1, 1]).unwrap();
    assert_eq!(pc::derived_subgroup(&ab).order_log(), 0);
    assert_eq!(pc::center(&ab).order_log(), 2);

    // center by brute force on the extraspecial group of exponent p
    let e = families::extraspecial(3, Exponent::P).unwrap();
    let all: Vec<_> = elements(&e).collect();
    let z = pc::center(&e);
    let brute = all.iter().filter(|g| all.iter().all(|h| (*g * h) == (h * *g))).count();
    assert_eq!(brute, 3);
    assert_eq!(z.order_log(), 1);
    for g in &all {
        assert_eq!(z.contains(g), all.iter().all(|h| (g * h) == (h * g)));
    }
    // a center with a main part
    let ec = families::extraspecial_times_cyclic(3, Exponent::P).unwrap();
    let zc = pc::center(&ec);
    assert_eq!(zc.order_log(), 2);
    let all: Vec<_> = elements(&ec).collect();
    for g in &all {
        assert_eq!(zc.contains(g), all.iter().all(|h| (g * h) == (h * g)));
    }
}

#[test]
fn structure_reports() {
    let r = pc::structure_report(&families::free_special(3, 3).unwrap()).unwrap();
    assert!(r.is_special && r.exponent == 3 && r.t == 0 && r.derived_rank == 3 && r.order_log == 6);
    let r = pc::structure_report(&families::non_capable_witness(3, 3).unwrap()).unwrap();
    assert!(r.is_special && r.exponent == 9 && r.t == 1 && r.derived_rank == 3 && r.order_log == 6);
    let r = pc::structure_report(&families::free_special(4, 3).unwrap()).unwrap();
    assert!(r.is_special && r.exponent == 3 && r.t == 0 && r.derived_rank == 6 && r.order_log == 10);
    for d in 3..=5 {
        for p in [3, 5] {
            let r = pc::structure_report(&families::free_special(d, p).unwrap()).unwrap();
            assert!(r.is_special && r.rank_full && r.derived_bound_holds);
        }
    }
    let r = pc::structure_report(&families::rank_deficient(3, 3, (1, 2), &[1, 1]).unwrap()).unwrap();
    assert!(r.is_special && r.rank_deficient);
    assert!(!pc::structure_report(&families::abelian(3, &[1, 1]).unwrap()).unwrap().is_special);
}

#[test]
fn central_quotients() {
    let f = families::free_special(3, 3).unwrap();
    let s = pc::SubgroupDescription::central(
        pc::SubgroupKind::Central,
        specp_core::abelian::fp::Subspace::span([vec![1, 0, 0]], 3, 3),
        3,
    );
    let q = pc::quotient_by_central(&f, &s).unwrap();
    let rep = pc::structure_report(&q).unwrap();
    assert_eq!((rep.order_log, rep.derived_rank), (5, 2));

    let w = families::non_capable_witness(3, 3).unwrap();
    let q = pc::quotient_by_central(&w, &pc::power_subgroup(&w).unwrap()).unwrap();
    assert_eq!(pc::structure_report(&q).unwrap().t, 0);

    let trivial = pc::SubgroupDescription::central(
        pc::SubgroupKind::Central,
        specp_core::abelian::fp::Subspace::zero(3, 3),
        3,
    );
    assert_eq!(pc::quotient_by_central(&f, &trivial).unwrap(), f);
    assert!(pc::quotient_by_central(&f, &pc::center(&families::abelian(3, &[1, 1, 1]).unwrap())).is_err());
}

#[test]
fn text_round_trip_for_families() {
    for (_, g) in test_groups() {
        let text = pc::text::emit(&g);
        let back = pc::text::parse(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(pc::text::emit(&back), text);
    }
}

fn el<'a>(g: &'a PcPresentation, raw: &[u32]) -> GroupElement<'a> {
    let p = g.p();
    let a = raw[..g.d()].iter().map(|x| x % p).collect();
    let b = raw[g.d()..g.d() + g.r()].iter().map(|x| x % p).collect();
    GroupElement::new(g, a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    // 10 groups x 10_000 cases: about 10^4 random triples per group on average
    #[test]
    fn associativity_and_laws(
        idx in 0usize..10,
        x in prop::collection::vec(0u32..25, 16),
        y in prop::collection::vec(0u32..25, 16),
        z in prop::collection::vec(0u32..25, 16),
    ) {
        let groups = test_groups();
        let g = &groups[idx].1;
        let (x, y, z) = (el(g, &x), el(g, &y), el(g, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert!((&x * &x.inverse()).is_identity());
        prop_assert!((&x.inverse() * &x).is_identity());
        prop_assert_eq!(&GroupElement::identity(g) * &x, x.clone());
        prop_assert!(x.power(0).is_identity());
        let p = g.p() as i64;
        prop_assert_eq!((&x * &y).power(p), &x.power(p) * &y.power(p));
        let xp = x.power(p);
        prop_assert!(xp.is_central_word());
        prop_assert_eq!(xp.central_part().to_vec(), g.pth_power_raw(x.main()));
        let (cx, cy) = (x.commutator(&z).unwrap(), y.commutator(&z).unwrap());
        prop_assert_eq!((&x * &y).commutator(&z).unwrap(), &cx * &cy);
        prop_assert_eq!(x.conjugate(&y).unwrap(), &(&x * &y) * &x.inverse());
    }
}
