use proptest::prelude::*;
use specp_core::hall::*;

#[test]
fn slices_match_witt_counts() {
    for d in 1..=6 {
        let b = enumerate_basic(d, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(b.weight_slice(n).len() as u64, witt_chi_u64(n as u32, d as u64), "d={d} n={n}");
        }
    }
}

#[test]
fn every_entry_obeys_the_rules() {
    let b = enumerate_basic(4, 4).unwrap();
    for (k, c) in b.elements.iter().enumerate() {
        assert_eq!(c.position, k);
        if let Shape::Bracket(i, j) = c.shape {
            let (ci, cj) = (&b.elements[i], &b.elements[j]);
            assert_eq!(ci.weight + cj.weight, c.weight);
            assert!(i > j);
            if let Shape::Bracket(_, t) = ci.shape {
                assert!(j >= t);
            }
        }
    }
    // weights non-decreasing; lexicographic within a weight
    for w in b.elements.windows(2) {
        assert!(w[0].weight <= w[1].weight);
        if let (Shape::Bracket(a1, b1), Shape::Bracket(a2, b2)) = (w[0].shape, w[1].shape) {
            if w[0].weight == w[1].weight {
                assert!((a1, b1) < (a2, b2));
            }
        }
    }
}

#[test]
fn weight_two_and_three_closed_forms() {
    for d in 1..=6u64 {
        assert_eq!(witt_chi_u64(2, d), d * (d - 1) / 2);
        assert_eq!(witt_chi_u64(3, d), d * (d - 1) * (d + 1) / 3);
    }
}

#[test]
fn multiplier_rank_is_the_weight_three_count() {
    for d in 2..=6 {
        assert!(rank_crosscheck(d).unwrap().consistent());
    }
    for d in [3, 4] {
        assert_eq!(rank_crosscheck(d).unwrap().multiplier_rank, Some(witt_chi_u64(3, d as u64) as u32));
    }
}

proptest! {
    /// Σ_{m | n} m χ_m(d) = d^n.
    #[test]
    fn necklace_identity(n in 1u32..12, d in 1u64..9) {
        let total: num_bigint::BigInt = (1..=n)
            .filter(|m| n % m == 0)
            .map(|m| witt_chi(m, d) * num_bigint::BigInt::from(m))
            .sum();
        prop_assert_eq!(total, num_traits::pow(num_bigint::BigInt::from(d), n as usize));
    }

    #[test]
    fn mobius_is_multiplicative(a in 1u64..200, b in 1u64..200) {
        if num_integer::gcd(a, b) == 1 {
            prop_assert_eq!(mobius(a * b), mobius(a) * mobius(b));
        }
    }
}
