use num_traits::Zero;

use super::table::verify_products;
use crate::element::{is_special_up_to_norm, same_level, CdElement};
use crate::error::{CdError, Result};
use crate::linalg::{
    left_mult_matrix, nullspace, right_mult_matrix, OperatorMatrix, SubspaceBasis,
};
use crate::rational::rational_sqrt;

/// Names the first clause of the special-couple definition that fails, or
/// `None` when `{a, b}` is a special couple up to norm.
pub fn special_couple_violation(a: &CdElement, b: &CdElement) -> Option<String> {
    if a.level() != b.level() {
        return Some(format!("levels differ ({} and {})", a.level(), b.level()));
    }
    for (name, x) in [("a", a), ("b", b)] {
        if x.is_zero() {
            return Some(format!("{name} is zero"));
        }
        if !x.is_pure() {
            return Some(format!("{name} has nonzero trace"));
        }
        if !is_special_up_to_norm(x) {
            return Some(format!("{name} is not alternative"));
        }
    }
    if !a.dot(b).is_zero() {
        return Some("a and b are not orthogonal".into());
    }
    if a.mul_unchecked(b) != -&b.mul_unchecked(a) {
        return Some("a and b do not anticommute".into());
    }
    None
}

/// Both entries alternative, trace zero and nonzero, orthogonal and
/// anticommuting. Norms are not required to be one.
pub fn is_special_couple(a: &CdElement, b: &CdElement) -> bool {
    special_couple_violation(a, b).is_none()
}

fn require_couple(a: &CdElement, b: &CdElement) -> Result<()> {
    match special_couple_violation(a, b) {
        None => Ok(()),
        Some(why) => Err(CdError::Precondition(format!(
            "not a special couple: {why}"
        ))),
    }
}

/// Basis `[e0, a, b, ab]` of the quaternion copy `V(a;b)`, after checking
/// its table with `A = |a|^2`, `B = |b|^2`:
///
/// ```text
///        a       b       ab
///  a    -A e0    ab     -A b
///  b    -ab     -B e0    B a
///  ab    A b    -B a    -AB e0
/// ```
pub fn vq_embed(a: &CdElement, b: &CdElement) -> Result<SubspaceBasis> {
    require_couple(a, b)?;
    let n = a.level();
    let e0 = CdElement::one(n);
    let ab = a.mul_unchecked(b);
    let na = a.norm_sq();
    let nb = b.norm_sq();
    let gens = vec![e0.clone(), a.clone(), b.clone(), ab.clone()];
    let table = |i: usize, j: usize| -> CdElement {
        match (i, j) {
            (0, k) | (k, 0) => gens[k].clone(),
            (1, 1) => e0.scale(&-na.clone()),
            (1, 2) => ab.clone(),
            (1, 3) => b.scale(&-na.clone()),
            (2, 1) => -&ab,
            (2, 2) => e0.scale(&-nb.clone()),
            (2, 3) => a.scale(&nb),
            (3, 1) => b.scale(&na),
            (3, 2) => a.scale(&-nb.clone()),
            (3, 3) => e0.scale(&-(na.clone() * &nb)),
            _ => unreachable!(),
        }
    };
    verify_products("V(a;b) table", &["e0", "a", "b", "ab"], &gens, table)?;
    SubspaceBasis::new(n, gens)
}

/// Matrix of `S(y) = (a, y, b) = (ay)b - a(yb)`, i.e. `R_b L_a - L_a R_b`.
pub fn s_operator(a: &CdElement, b: &CdElement) -> Result<OperatorMatrix> {
    same_level(a, b)?;
    let la = left_mult_matrix(a);
    let rb = right_mult_matrix(b);
    Ok(rb.compose(&la).sub(&la.compose(&rb)))
}

/// `T_c = L_{c^2} - L_c^2`, which vanishes exactly when `c` is alternative.
pub fn t_operator(c: &CdElement) -> OperatorMatrix {
    let lc = left_mult_matrix(c);
    left_mult_matrix(&c.mul_unchecked(c)).sub(&lc.square())
}

/// Kernel of `S` on the orthogonal complement of `V(a;b)` split into the
/// kernels of `L_{a+b}` and `L_{a-b}`.
#[derive(Clone, Debug)]
pub struct KerSDecomposition {
    /// `b` rescaled to the norm of `a`.
    pub b_scaled: CdElement,
    pub v_ab: SubspaceBasis,
    pub v_perp: SubspaceBasis,
    pub ker_s_perp: SubspaceBasis,
    pub ker_plus: SubspaceBasis,
    pub ker_minus: SubspaceBasis,
    /// Whether all of `Ker L_{a+b}` already lies in the complement.
    pub plus_inside_perp: bool,
    pub minus_inside_perp: bool,
}

/// Splits `Ker S ∩ V(a;b)^⊥` as `Ker L_{a+b} ⊕ Ker L_{a-b}` (both cut down to
/// the complement), with `b` first rescaled to `|a|`. The rescaling must be
/// rational, so `|a|^2 / |b|^2` has to be a square in `Q`.
///
/// Checks that the sum is direct and fills the kernel, that both parts have
/// the same dimension, and that the kernel dimension is a multiple of 8.
pub fn ker_s_decomposition(a: &CdElement, b: &CdElement) -> Result<KerSDecomposition> {
    require_couple(a, b)?;
    let ratio = a.norm_sq() / b.norm_sq();
    let r = rational_sqrt(&ratio).ok_or_else(|| {
        CdError::Precondition(format!(
            "|a|^2/|b|^2 = {ratio} is not a rational square, so b cannot be rescaled to |a|"
        ))
    })?;
    let b_scaled = b.scale(&r);
    let n = a.level();
    let v_ab = vq_embed(a, &b_scaled)?;
    let v_perp = SubspaceBasis::orthogonal_complement_of(n, v_ab.vectors());

    let s = s_operator(a, &b_scaled)?;
    let ker_s_perp = nullspace(&s).intersect_orthogonal_complement(v_ab.vectors());
    let full_plus = nullspace(&left_mult_matrix(&(a + &b_scaled)));
    let full_minus = nullspace(&left_mult_matrix(&(a - &b_scaled)));
    let ker_plus = full_plus.intersect_orthogonal_complement(v_ab.vectors());
    let ker_minus = full_minus.intersect_orthogonal_complement(v_ab.vectors());

    let fail = |msg: &str| {
        Err(CdError::Invariant(format!(
            "Ker S split for ({a}, {b}): {msg}"
        )))
    };
    if !ker_plus.is_direct_sum_with(&ker_minus) {
        return fail("Ker L_{a+b} and Ker L_{a-b} intersect");
    }
    if !ker_plus.sum(&ker_minus).same_span(&ker_s_perp) {
        return fail("Ker L_{a+b} + Ker L_{a-b} differs from Ker S");
    }
    if ker_plus.dim() != ker_minus.dim() {
        return fail("the two parts differ in dimension");
    }
    if !ker_s_perp.dim().is_multiple_of(8) {
        return fail("dim Ker S is not a multiple of 8");
    }
    Ok(KerSDecomposition {
        plus_inside_perp: ker_plus.dim() == full_plus.dim(),
        minus_inside_perp: ker_minus.dim() == full_minus.dim(),
        b_scaled,
        v_ab,
        v_perp,
        ker_s_perp,
        ker_plus,
        ker_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::rational::int;

    fn e(n: u32, i: usize) -> CdElement {
        CdElement::basis(n, i)
    }

    #[test]
    fn couple_examples() {
        assert!(is_special_couple(&e(4, 1), &e(4, 2)));
        assert!(!is_special_couple(&e(4, 1), &e(4, 1)));
        let x = parse_element("e1+e10", 4).unwrap();
        let why = special_couple_violation(&x, &e(4, 2)).unwrap();
        assert!(why.contains("a is not alternative"), "{why}");
        assert!(special_couple_violation(&e(3, 0), &e(3, 1))
            .unwrap()
            .contains("trace"));
    }

    #[test]
    fn quaternion_copy() {
        let v = vq_embed(&e(3, 1), &e(3, 2)).unwrap();
        let want: Vec<_> = (0..4).map(|i| e(3, i)).collect();
        assert_eq!(v.vectors(), &want[..]);
        vq_embed(&e(4, 1), &e(4, 9)).unwrap();
        let a = parse_element("2e1", 4).unwrap();
        let b = parse_element("3e9", 4).unwrap();
        vq_embed(&a, &b).unwrap();
        let ab = a.mul_unchecked(&b);
        assert_eq!(b.mul_unchecked(&ab), a.scale(&b.norm_sq()));
        assert!(matches!(
            vq_embed(&e(4, 1), &e(4, 1)),
            Err(CdError::Precondition(_))
        ));
    }

    #[test]
    fn s_vanishes_on_quaternion_copy() {
        let (a, b) = (e(4, 1), e(4, 2));
        let s = s_operator(&a, &b).unwrap();
        let v = vq_embed(&a, &b).unwrap();
        assert!(s.annihilates(&v));
        assert!(s.is_skew_symmetric() || !s.is_zero());
    }

    #[test]
    fn t_vanishes_for_alternative() {
        assert!(t_operator(&e(5, 3)).is_zero());
        assert!(!t_operator(&parse_element("e1+e10", 4).unwrap()).is_zero());
    }

    #[test]
    fn octonion_couple_has_trivial_kernel() {
        let d = ker_s_decomposition(&e(3, 1), &e(3, 2)).unwrap();
        assert_eq!(d.v_perp.dim(), 4);
        assert_eq!(d.ker_s_perp.dim(), 0);
    }

    #[test]
    fn basis_couples_split_at_level_4() {
        for i in 1..16 {
            for j in (i + 1)..16 {
                let (a, b) = (e(4, i), e(4, j));
                if is_special_couple(&a, &b) {
                    let d = ker_s_decomposition(&a, &b).unwrap();
                    assert_eq!(d.ker_plus.dim(), d.ker_minus.dim());
                }
            }
        }
    }

    #[test]
    fn rescales_b() {
        let a = e(4, 1).scale(&int(2));
        let d = ker_s_decomposition(&a, &e(4, 9)).unwrap();
        assert_eq!(d.b_scaled.norm_sq(), a.norm_sq());
        let unit = ker_s_decomposition(&e(4, 1), &e(4, 9)).unwrap();
        assert!(d.ker_s_perp.same_span(&unit.ker_s_perp));
        let b = parse_element("e2+e3", 4).unwrap();
        assert!(is_special_couple(&e(4, 1), &b));
        assert!(matches!(
            ker_s_decomposition(&e(4, 1), &b),
            Err(CdError::Precondition(_))
        ));
    }
}
