use super::couple::is_special_couple;
use super::triple::is_special_triple;
use crate::basis;
use crate::element::{is_alternative, same_level, CdElement};
use crate::error::{CdError, Result};
use crate::linalg::{eigen_kernel, left_mult_matrix, nullspace};
use crate::rational::int;

/// Float pivots at or above this count toward the rank.
pub const FLOAT_PIVOT_THRESHOLD: f64 = 1e-9;
/// Float pivots below this are treated as zero; anything between the two
/// thresholds makes the verdict indeterminate.
pub const FLOAT_INDETERMINATE_FLOOR: f64 = 1e-12;

/// Outcome of testing whether `(a, b)` in `A_{n+1}` is a zero divisor, by
/// the eigenvalue criterion on `L_{a+b}^2` and by a direct nullspace.
#[derive(Clone, Debug)]
pub struct ZdReport {
    pub a: CdElement,
    pub b: CdElement,
    /// Level of the pair `(a, b)`, one above that of `a` and `b`.
    pub level_pair: u32,
    /// `Ker L_{(a,b)} != 0`, computed exactly.
    pub is_zero_divisor: bool,
    /// `|a| = |b| = N` and `-2N` is an eigenvalue of `L_{a+b}^2` on
    /// `{e0, a, b, ab, ba}^⊥`.
    pub criterion_eigenvalue_hit: bool,
    /// Same eigenvalue test on all of `A_n`. Differs from the criterion when
    /// the only eigenvectors lie in `V(a;b)`, e.g. for quaternion units.
    pub unrestricted_eigenvalue_hit: bool,
    pub ker_dim: usize,
    /// An annihilating pair `(x, y)` with `(a, b)(x, y) = 0`.
    pub witness: Option<(CdElement, CdElement)>,
    /// The witness is `(-a(by)/N, y)` for an eigenvector `y`, rather than
    /// taken from the nullspace.
    pub witness_from_criterion: bool,
    pub equal_norms: bool,
    pub special_couple: bool,
    /// Every annihilator basis vector `(x, y)` makes `{a, y, b}` a special
    /// triple. False when not a zero divisor.
    pub special_zd: bool,
}

impl ZdReport {
    pub fn verdicts_agree(&self) -> bool {
        self.is_zero_divisor == self.criterion_eigenvalue_hit
    }

    pub fn pair(&self) -> CdElement {
        CdElement::pair(&self.a, &self.b).expect("same level")
    }
}

fn require_pure_alternative(name: &str, x: &CdElement) -> Result<()> {
    if x.is_zero() {
        return Err(CdError::Precondition(format!("{name} is zero")));
    }
    if !x.is_pure() {
        return Err(CdError::Precondition(format!("{name} has nonzero trace")));
    }
    if !is_alternative(x) {
        return Err(CdError::Precondition(format!(
            "{name} = {x} is not alternative"
        )));
    }
    Ok(())
}

/// Decides whether `(a, b)` is a zero divisor in `A_{n+1}` for nonzero,
/// trace-zero, alternative `a, b` in `A_n`, both through the eigenvalue
/// criterion and through the nullspace of `L_{(a,b)}`. The two verdicts are
/// reported side by side; [`ZdReport::verdicts_agree`] compares them.
pub fn zd_test(a: &CdElement, b: &CdElement) -> Result<ZdReport> {
    same_level(a, b)?;
    require_pure_alternative("a", a)?;
    require_pure_alternative("b", b)?;
    let n = a.level();
    let p = CdElement::pair(a, b)?;
    let ker = nullspace(&left_mult_matrix(&p));
    let is_zero_divisor = !ker.is_empty();

    let na = a.norm_sq();
    let equal_norms = na == b.norm_sq();
    let mut criterion_eigenvalue_hit = false;
    let mut unrestricted_eigenvalue_hit = false;
    let mut witness = None;
    let mut witness_from_criterion = false;
    if equal_norms {
        let c = a + b;
        let eig = eigen_kernel(&left_mult_matrix(&c).square(), &(int(-2) * &na));
        unrestricted_eigenvalue_hit = !eig.is_empty();
        let ab = a.mul_unchecked(b);
        let ba = b.mul_unchecked(a);
        let avoid = [CdElement::one(n), a.clone(), b.clone(), ab, ba];
        let restricted = eig.intersect_orthogonal_complement(&avoid);
        if let Some(y) = restricted.first() {
            criterion_eigenvalue_hit = true;
            let x = -&a.mul_unchecked(&b.mul_unchecked(y)).scale(&(na.recip()));
            if !p.mul_unchecked(&CdElement::pair(&x, y)?).is_zero() {
                return Err(CdError::Invariant(format!(
                    "eigenvector {y} of L_(a+b)^2 does not give an annihilating pair for ({a}, {b})"
                )));
            }
            witness = Some((x, y.clone()));
            witness_from_criterion = true;
        }
    }
    if witness.is_none() {
        if let Some(v) = ker.first() {
            witness = Some(v.halves()?);
        }
    }
    if !is_zero_divisor {
        witness = None;
    }

    let special_zd = is_zero_divisor
        && ker.vectors().iter().all(|v| {
            let (_, y) = v.halves().expect("level >= 1");
            is_special_triple(a, &y, b)
        });

    Ok(ZdReport {
        a: a.clone(),
        b: b.clone(),
        level_pair: n + 1,
        is_zero_divisor,
        criterion_eigenvalue_hit,
        unrestricted_eigenvalue_hit,
        ker_dim: ker.dim(),
        witness,
        witness_from_criterion,
        equal_norms,
        special_couple: is_special_couple(a, b),
        special_zd,
    })
}

/// Whether every annihilating pair `(x, y)` of the zero divisor `(a, b)` has
/// `{a, y, b}` a special triple; the annihilator basis is checked.
pub fn special_zd_test(a: &CdElement, b: &CdElement) -> Result<bool> {
    let report = zd_test(a, b)?;
    if !report.is_zero_divisor {
        return Err(CdError::Precondition(format!(
            "({a}, {b}) is not a zero divisor"
        )));
    }
    Ok(report.special_zd)
}

/// Double-precision zero-divisor check for coordinates that are not
/// rational, such as unit vectors with a `1/sqrt(2)` entry.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatZdReport {
    pub level_pair: u32,
    /// `2^(n+1) - rank L_{(a,b)}`.
    pub nullity: usize,
    pub is_zero_divisor: bool,
    /// `max_k |((p, p, e_k))|` below [`FLOAT_PIVOT_THRESHOLD`] for `p = (a, b)`.
    pub alternative: bool,
    pub max_associator: f64,
    /// Smallest pivot accepted during elimination.
    pub min_pivot: f64,
}

fn float_mul(level: u32, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0.0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0.0 {
                out[i ^ j] += f64::from(basis::sign(level, i, j)) * xi * yj;
            }
        }
    }
    out
}

fn level_of(len: usize) -> Result<u32> {
    if len < 2 || !len.is_power_of_two() {
        return Err(CdError::Precondition(format!(
            "coordinate count {len} is not a power of two >= 2"
        )));
    }
    Ok(len.trailing_zeros())
}

/// Rank of `L_{(a,b)}` by Gaussian elimination with full pivoting, plus the
/// alternativity of `(a, b)`, at the default thresholds.
pub fn zd_test_float(a: &[f64], b: &[f64]) -> Result<FloatZdReport> {
    zd_test_float_with(a, b, FLOAT_PIVOT_THRESHOLD)
}

/// [`zd_test_float`] with pivot threshold `tol`; pivots below `tol * 1e-3`
/// count as zero and those in between are indeterminate.
pub fn zd_test_float_with(a: &[f64], b: &[f64], tol: f64) -> Result<FloatZdReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CdError::Precondition(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let floor = tol * (FLOAT_INDETERMINATE_FLOOR / FLOAT_PIVOT_THRESHOLD);
    let n = level_of(a.len())?;
    if b.len() != a.len() {
        return Err(CdError::LevelMismatch {
            left: n,
            right: level_of(b.len()).unwrap_or(0),
        });
    }
    let level = n + 1;
    let p: Vec<f64> = a.iter().chain(b).copied().collect();
    let d = p.len();

    let mut m = vec![0.0; d * d];
    for (i, &pi) in p.iter().enumerate() {
        for j in 0..d {
            m[(i ^ j) * d + j] = f64::from(basis::sign(level, i, j)) * pi;
        }
    }
    let mut rank = 0;
    let mut min_pivot = f64::INFINITY;
    let mut row_used = vec![false; d];
    let mut col_used = vec![false; d];
    loop {
        let mut best = (0.0, 0, 0);
        for r in (0..d).filter(|&r| !row_used[r]) {
            for c in (0..d).filter(|&c| !col_used[c]) {
                let v = m[r * d + c].abs();
                if v > best.0 {
                    best = (v, r, c);
                }
            }
        }
        let (mag, pr, pc) = best;
        if mag < floor {
            break;
        }
        if mag < tol {
            return Err(CdError::Indeterminate { pivot: mag });
        }
        row_used[pr] = true;
        col_used[pc] = true;
        rank += 1;
        min_pivot = min_pivot.min(mag);
        let piv = m[pr * d + pc];
        for r in (0..d).filter(|&r| !row_used[r]) {
            let f = m[r * d + pc] / piv;
            if f != 0.0 {
                for c in 0..d {
                    m[r * d + c] -= f * m[pr * d + c];
                }
            }
        }
    }

    let pp = float_mul(level, &p, &p);
    let mut max_associator: f64 = 0.0;
    for k in 0..d {
        let mut e = vec![0.0; d];
        e[k] = 1.0;
        let left = float_mul(level, &pp, &e);
        let right = float_mul(level, &p, &float_mul(level, &p, &e));
        for (l, r) in left.iter().zip(&right) {
            max_associator = max_associator.max((l - r).abs());
        }
    }
    Ok(FloatZdReport {
        level_pair: level,
        nullity: d - rank,
        is_zero_divisor: rank < d,
        alternative: max_associator < tol,
        max_associator,
        min_pivot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    fn e(n: u32, i: usize) -> CdElement {
        CdElement::basis(n, i)
    }

    #[test]
    fn octonion_units_give_sedenion_zero_divisor() {
        let r = zd_test(&e(3, 1), &e(3, 2)).unwrap();
        assert!(r.is_zero_divisor);
        assert!(r.verdicts_agree());
        assert_eq!(r.ker_dim, 4);
        assert!(r.special_zd);
        assert!(r.witness_from_criterion);
        let (x, y) = r.witness.clone().unwrap();
        assert!(r
            .pair()
            .mul_unchecked(&CdElement::pair(&x, &y).unwrap())
            .is_zero());
        assert_eq!(r.pair(), parse_element("e1+e10", 4).unwrap());
    }

    #[test]
    fn quaternion_units_are_not_zero_divisors() {
        let r = zd_test(&e(2, 1), &e(2, 2)).unwrap();
        assert!(!r.is_zero_divisor);
        assert!(!r.criterion_eigenvalue_hit);
        assert!(r.unrestricted_eigenvalue_hit);
        assert!(r.witness.is_none());
    }

    #[test]
    fn top_dimension_for_tilde() {
        let r = zd_test(&e(4, 1), &e(4, 9)).unwrap();
        assert_eq!(r.ker_dim, 12);
        assert!(r.verdicts_agree());
    }

    #[test]
    fn dependent_pair_is_not_zero_divisor() {
        let r = zd_test(&e(3, 1), &e(3, 1)).unwrap();
        assert!(!r.is_zero_divisor && r.verdicts_agree());
        let r = zd_test(&e(4, 1), &e(4, 2).scale(&int(2))).unwrap();
        assert!(!r.equal_norms && !r.is_zero_divisor);
    }

    #[test]
    fn preconditions() {
        let x = parse_element("e1+e10", 4).unwrap();
        assert!(matches!(
            zd_test(&x, &e(4, 2)),
            Err(CdError::Precondition(_))
        ));
        assert!(matches!(
            zd_test(&e(4, 0), &e(4, 2)),
            Err(CdError::Precondition(_))
        ));
        assert!(zd_test(&e(3, 1), &e(4, 2)).is_err());
        assert!(special_zd_test(&e(2, 1), &e(2, 2)).is_err());
        assert!(special_zd_test(&e(3, 1), &e(3, 2)).unwrap());
    }

    #[test]
    fn float_irrational_couple() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let b = [0.0, s, s, 0.0, 0.0, 0.0, 0.0, 0.0];
        let r = zd_test_float(&a, &b).unwrap();
        assert_eq!(r.nullity, 0);
        assert!(!r.is_zero_divisor);
        assert!(!r.alternative);
    }

    #[test]
    fn float_agrees_with_exact() {
        let a = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let b = [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let r = zd_test_float(&a, &b).unwrap();
        assert_eq!(r.nullity, 4);
        assert!(r.is_zero_divisor);
        let same = zd_test_float(&a, &a).unwrap();
        assert_eq!(same.nullity, 0);
    }

    #[test]
    fn float_borderline_is_indeterminate() {
        let a = [0.0, 1e-10, 0.0, 0.0];
        let b = [0.0; 4];
        assert!(matches!(
            zd_test_float(&a, &b),
            Err(CdError::Indeterminate { .. })
        ));
        assert!(zd_test_float(&[0.0; 3], &[0.0; 3]).is_err());
    }
}
