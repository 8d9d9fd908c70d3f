//! Property tests for identities that hold in every Cayley-Dickson algebra,
//! plus the norm-multiplicativity boundary between levels 3 and 4.

use cdalg::linalg::{left_mult_matrix, nullspace, rank};
use cdalg::rational::int;
use cdalg::{associator, commutator, format_element, parse_element, CdElement, Rat};
use num_traits::Zero;
use proptest::prelude::*;

/// Sparse small-integer element at `level`.
fn element(level: u32) -> impl Strategy<Value = CdElement> {
    let d = 1usize << level;
    proptest::collection::vec((0..d, -3i64..=3), 0..=6).prop_map(move |terms| {
        let mut coords = vec![0i64; d];
        for (i, c) in terms {
            coords[i] = c;
        }
        CdElement::from_ints(level, &coords).unwrap()
    })
}

fn pure(level: u32) -> impl Strategy<Value = CdElement> {
    element(level).prop_map(|x| {
        let mut c = x.into_coords();
        let level = c.len().trailing_zeros();
        c[0] = Rat::zero();
        CdElement::from_coords(level, c).unwrap()
    })
}

/// Trace-zero element orthogonal to the unit of the second doubling half.
fn doubly_pure(level: u32) -> impl Strategy<Value = CdElement> {
    pure(level).prop_map(|x| {
        let mut c = x.into_coords();
        let level = c.len().trailing_zeros();
        let h = c.len() / 2;
        c[h] = Rat::zero();
        CdElement::from_coords(level, c).unwrap()
    })
}

fn pair(level: u32) -> impl Strategy<Value = (CdElement, CdElement)> {
    (element(level), element(level))
}

fn triple(level: u32) -> impl Strategy<Value = (CdElement, CdElement, CdElement)> {
    (element(level), element(level), element(level))
}

fn any_level_pair() -> impl Strategy<Value = (CdElement, CdElement)> {
    (1u32..=5).prop_flat_map(pair)
}

fn any_level_triple() -> impl Strategy<Value = (CdElement, CdElement, CdElement)> {
    (1u32..=5).prop_flat_map(triple)
}

fn unit(level: u32) -> CdElement {
    CdElement::one(level)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_of_product_reverses_order((x, y) in any_level_pair()) {
        prop_assert_eq!((&x * &y).conjugate(), &y.conjugate() * &x.conjugate());
    }

    #[test]
    fn characteristic_equation(x in (0u32..=6).prop_flat_map(element)) {
        let lhs = &(&x * &x) - &x.scale(&x.trace());
        let rhs = unit(x.level()).scale(&-x.norm_sq());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flexible_law((x, y) in (1u32..=6).prop_flat_map(pair)) {
        prop_assert!(associator(&x, &y, &x).unwrap().is_zero());
    }

    #[test]
    fn conjugation_negates_associator_in_each_slot((x, y, z) in any_level_triple()) {
        let base = associator(&x, &y, &z).unwrap();
        prop_assert_eq!(associator(&x.conjugate(), &y, &z).unwrap(), -&base);
        prop_assert_eq!(associator(&x, &y.conjugate(), &z).unwrap(), -&base);
        prop_assert_eq!(associator(&x, &y, &z.conjugate()).unwrap(), -&base);
    }

    #[test]
    fn associators_and_commutators_are_traceless((x, y, z) in any_level_triple()) {
        prop_assert!(associator(&x, &y, &z).unwrap().trace().is_zero());
        prop_assert!(commutator(&x, &y).unwrap().trace().is_zero());
    }

    #[test]
    fn four_term_associator_expansion(
        (x, y, z, w) in (1u32..=5).prop_flat_map(|n| (element(n), element(n), element(n), element(n)))
    ) {
        let lhs = &(&x * &associator(&y, &z, &w).unwrap()) + &(&associator(&x, &y, &z).unwrap() * &w);
        let rhs = &(&associator(&(&x * &y), &z, &w).unwrap() - &associator(&x, &(&y * &z), &w).unwrap())
            + &associator(&x, &y, &(&z * &w)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_adjoints((x, y, z) in any_level_triple()) {
        let a = x.inner(&(&y * &z)).unwrap();
        prop_assert_eq!(&a, &(&x * &z.conjugate()).inner(&y).unwrap());
        prop_assert_eq!(&a, &(&y.conjugate() * &x).inner(&z).unwrap());
    }

    #[test]
    fn product_norm_symmetries((x, y) in any_level_pair()) {
        let n = (&x * &y).norm_sq();
        prop_assert_eq!(&n, &(&x.conjugate() * &y).norm_sq());
        prop_assert_eq!(&n, &(&x * &y.conjugate()).norm_sq());
        prop_assert_eq!(&n, &(&y * &x).norm_sq());
    }

    #[test]
    fn square_vanishes_only_at_zero(x in (0u32..=6).prop_flat_map(element)) {
        prop_assert_eq!((&x * &x).is_zero(), x.is_zero());
    }

    #[test]
    fn norm_is_multiplicative_up_to_octonions((x, y) in (0u32..=3).prop_flat_map(pair)) {
        prop_assert_eq!((&x * &y).norm_sq(), x.norm_sq() * y.norm_sq());
    }

    #[test]
    fn table_product_matches_recursion((x, y) in (0u32..=6).prop_flat_map(pair)) {
        prop_assert_eq!(x.multiply(&y).unwrap(), x.multiply_recursive(&y).unwrap());
    }

    #[test]
    fn canonical_text_round_trips(x in (0u32..=6).prop_flat_map(element)) {
        let text = format_element(&x);
        prop_assert_eq!(parse_element(&text, x.level()).unwrap(), x);
    }

    #[test]
    fn pure_left_multiplication_is_skew(a in (1u32..=5).prop_flat_map(pure)) {
        let l = left_mult_matrix(&a);
        prop_assert!(l.is_skew_symmetric());
        prop_assert!(l.square().is_symmetric());
    }

    #[test]
    fn rank_plus_nullity_is_dimension(a in (1u32..=5).prop_flat_map(element)) {
        let l = left_mult_matrix(&a);
        prop_assert_eq!(rank(l.matrix()) + nullspace(&l).dim(), a.dim());
    }

    #[test]
    fn annihilating_pairs_survive_swaps_and_conjugation(a in (4u32..=5).prop_flat_map(doubly_pure)) {
        let ker = nullspace(&left_mult_matrix(&a));
        for y in ker.vectors() {
            prop_assert!((&a * y).is_zero());
            prop_assert!((y * &a).is_zero());
            prop_assert!((&a.conjugate() * y).is_zero());
            prop_assert!((&a * &y.conjugate()).is_zero());
            // The tilde map preserves the annihilator of a doubly pure element.
            prop_assert!((&a * &y.tilde().unwrap()).is_zero());
        }
    }

    #[test]
    fn swapped_halves_have_explicit_partner(a in (4u32..=5).prop_flat_map(doubly_pure)) {
        let ker = nullspace(&left_mult_matrix(&a));
        for y in ker.vectors() {
            let (y1, y2) = y.halves().unwrap();
            let partner = CdElement::pair(&-&y2.conjugate(), &y1).unwrap();
            prop_assert!((&partner * &a.check().unwrap()).is_zero());
        }
    }

    #[test]
    fn tilde_identities((a, b) in (2u32..=5).prop_flat_map(|n| (doubly_pure(n), doubly_pure(n)))) {
        let n = a.level();
        let e = CdElement::e0_tilde(n).unwrap();
        let at = a.tilde().unwrap();
        let bt = b.tilde().unwrap();
        prop_assert_eq!(&a * &e, at.clone());
        prop_assert_eq!(&e * &a, -&at);
        prop_assert_eq!(&a * &at, e.scale(&-a.norm_sq()));
        prop_assert_eq!(&at * &b, -&(&a * &b).tilde().unwrap());
        if a.inner(&b).unwrap().is_zero() {
            prop_assert!((&(&at * &b) + &(&bt * &a)).is_zero());
        }
        if at.inner(&b).unwrap().is_zero() {
            prop_assert_eq!(&a * &b, &bt * &at);
        }
    }
}

#[test]
fn golden_witness_breaks_norm_multiplicativity() {
    let x = parse_element("e1+e10", 4).unwrap();
    let y = parse_element("e15-e4", 4).unwrap();
    assert!((&x * &y).is_zero());
    assert_eq!(x.norm_sq() * y.norm_sq(), int(4));
}

#[test]
fn golden_associators() {
    let e = |i| CdElement::basis(4, i);
    assert_eq!(
        format_element(&associator(&e(1), &e(15), &e(2)).unwrap()),
        "2e12"
    );
    assert!(associator(&e(1), &e(2), &e(15)).unwrap().is_zero());
    assert_eq!(&(&e(1) * &e(15)) * &e(2), -&(&e(1) * &(&e(15) * &e(2))));
}
