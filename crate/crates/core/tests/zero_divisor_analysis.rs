//! Exact checks of the zero-divisor machinery over complete families of
//! basis couples and over seeded random inputs.

use cdalg::analysis::{
    decompose, is_special_couple, ker_s_decomposition, s_operator, special_zd_test, t_operator,
    vq_embed, zd_test,
};
use cdalg::catalog::{evaluate, CandidateFamily, FamilyKind, FamilyParams};
use cdalg::linalg::{agree_on, left_mult_matrix, nullspace, right_mult_matrix, SubspaceBasis};
use cdalg::random::ElementSampler;
use cdalg::rational::int;
use cdalg::{is_alternative, parse_element, CdElement};
use num_traits::One;

fn basis_couples(level: u32) -> Vec<(CdElement, CdElement)> {
    let d = 1usize << level;
    let mut out = Vec::new();
    for i in 1..d {
        for j in i + 1..d {
            let (a, b) = (CdElement::basis(level, i), CdElement::basis(level, j));
            if is_special_couple(&a, &b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[test]
fn every_basis_pair_below_level_four_is_a_couple() {
    assert_eq!(basis_couples(3).len(), 21);
    assert_eq!(basis_couples(2).len(), 3);
}

#[test]
fn associator_kernel_splits_for_basis_couples() {
    for level in [3, 4] {
        let couples = basis_couples(level);
        assert!(!couples.is_empty());
        for (a, b) in couples {
            let k = ker_s_decomposition(&a, &b).unwrap();
            assert_eq!(k.ker_plus.dim(), k.ker_minus.dim(), "{a}, {b}");
            assert_eq!(k.ker_s_perp.dim(), k.ker_plus.dim() + k.ker_minus.dim());
            assert_eq!(k.ker_s_perp.dim() % 8, 0, "{a}, {b}");
        }
    }
}

#[test]
fn t_operator_matches_s_forms_off_the_quaternion_copy() {
    for level in [3, 4] {
        for (a, b) in basis_couples(level) {
            let v = vq_embed(&a, &b).unwrap();
            let perp = SubspaceBasis::orthogonal_complement_of(level, v.vectors());
            let s = s_operator(&a, &b).unwrap();
            let t = t_operator(&(&a + &b));
            let la = left_mult_matrix(&a);
            let rb = right_mult_matrix(&b);
            let two = int(2);
            let first = s.scale(&-int(1)).add(&rb.compose(&la).scale(&two));
            let second = s.add(&la.compose(&rb).scale(&two));
            assert!(agree_on(&t, &first, &perp), "{a}, {b}");
            assert!(agree_on(&t, &second, &perp), "{a}, {b}");
        }
    }
}

#[test]
fn annihilator_dimension_bound_for_basis_couples() {
    for level in [3, 4] {
        let d = 1usize << level;
        for (a, b) in basis_couples(level) {
            let r = zd_test(&a, &b).unwrap();
            let plus = nullspace(&left_mult_matrix(&(&a + &b))).dim();
            assert!(
                r.ker_dim + 2 * plus <= d - 4,
                "{a}, {b}: {} + 2*{plus}",
                r.ker_dim
            );
            assert!(r.verdicts_agree(), "{a}, {b}");
        }
    }
}

#[test]
fn low_level_couples_give_special_zero_divisors() {
    for (a, b) in basis_couples(3) {
        let r = zd_test(&a, &b).unwrap();
        assert!(r.is_zero_divisor, "{a}, {b}");
        assert_eq!(r.ker_dim, 4);
        assert!(special_zd_test(&a, &b).unwrap());
    }
}

#[test]
fn top_dimension_annihilator() {
    let a = CdElement::basis(4, 1);
    let at = a.tilde().unwrap();
    let r = zd_test(&a, &at).unwrap();
    assert_eq!(r.ker_dim, 16 - 4);
}

#[test]
fn alternative_multiplication_determinant() {
    let mut s = ElementSampler::new(11);
    for level in 1..=4 {
        for _ in 0..10 {
            let a = s.alternative(level);
            let det = left_mult_matrix(&a).determinant();
            let want =
                (0..1usize << (level - 1)).fold(cdalg::Rat::one(), |acc, _| acc * a.norm_sq());
            assert_eq!(det, want, "{a}");
        }
    }
}

#[test]
fn random_doubly_pure_decompositions() {
    let mut s = ElementSampler::with_shape(5, 4, 3);
    let mut seen = 0;
    while seen < 20 {
        let a = s.doubly_pure(4);
        if a.is_zero() {
            continue;
        }
        let d = decompose(&a).unwrap();
        d.check_invariants().unwrap();
        let (h, t, l, middle) = d.dims();
        assert_eq!(h + t + l + middle.iter().sum::<usize>(), 16);
        assert_eq!(l % 4, 0);
        assert!(l <= 12);
        assert!(middle.iter().all(|m| m % 4 == 0), "{a}: {middle:?}");
        seen += 1;
    }
}

#[test]
fn random_rational_sweep_has_no_criterion_mismatch() {
    for level in [3, 4] {
        let params = FamilyParams {
            seed: 3,
            count: Some(60),
            ..FamilyParams::default()
        };
        let family = CandidateFamily::new(FamilyKind::RandomRational, level).with_params(params);
        let entries = evaluate(&family).unwrap();
        assert_eq!(entries.len(), 60);
        for e in &entries {
            assert!(!e.criterion_mismatch(), "{} {}", e.a, e.b);
            if let (Some(x), Some(y)) = (&e.witness_x, &e.witness_y) {
                let a = parse_element(&e.a, level).unwrap();
                let b = parse_element(&e.b, level).unwrap();
                let p = CdElement::pair(&a, &b).unwrap();
                let w = CdElement::pair(
                    &parse_element(x, level).unwrap(),
                    &parse_element(y, level).unwrap(),
                )
                .unwrap();
                assert!((&p * &w).is_zero());
            }
        }
    }
}

#[test]
fn non_alternative_inputs_are_rejected() {
    let a = parse_element("e3+e13", 4).unwrap();
    assert!(!is_alternative(&a));
    assert!(zd_test(&a, &CdElement::basis(4, 1)).is_err());
}
