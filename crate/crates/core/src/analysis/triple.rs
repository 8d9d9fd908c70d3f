use num_traits::{One, Zero};

use super::couple::is_special_couple;
use super::table::verify_products;
use crate::basis;
use crate::element::{same_level, CdElement};
use crate::error::{CdError, Result};
use crate::linalg::SubspaceBasis;
use crate::rational::Rat;

/// Which of `a`, `b`, `y` (bits 1, 2, 4) enter each generator
/// `e0, a, b, ab, (ay)b, yb, ay, y`. Generator `k` plays the role of the
/// octonion unit `e_k`, and `k -> mask` is linear over GF(2).
pub const OCTONION_GENERATOR_MASKS: [usize; 8] = [0, 1, 2, 3, 7, 6, 5, 4];

const NAMES: [&str; 8] = ["e0", "a", "b", "ab", "(ay)b", "yb", "ay", "y"];

/// Pairwise orthogonal nonzero `a, y, b` with `{a, b}` a special couple and
/// `(ay)b = -a(yb)`.
pub fn is_special_triple(a: &CdElement, y: &CdElement, b: &CdElement) -> bool {
    if same_level(a, y).is_err() || same_level(y, b).is_err() {
        return false;
    }
    if y.is_zero() || !a.dot(y).is_zero() || !y.dot(b).is_zero() {
        return false;
    }
    if !is_special_couple(a, b) {
        return false;
    }
    a.mul_unchecked(y).mul_unchecked(b) == -&a.mul_unchecked(&y.mul_unchecked(b))
}

/// A validated special triple `{a, y, b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialTriple {
    a: CdElement,
    y: CdElement,
    b: CdElement,
}

impl SpecialTriple {
    pub fn new(a: CdElement, y: CdElement, b: CdElement) -> Result<Self> {
        if !is_special_triple(&a, &y, &b) {
            return Err(CdError::Precondition(format!(
                "{{{a}, {y}, {b}}} is not a special triple"
            )));
        }
        Ok(SpecialTriple { a, y, b })
    }

    pub fn a(&self) -> &CdElement {
        &self.a
    }

    pub fn y(&self) -> &CdElement {
        &self.y
    }

    pub fn b(&self) -> &CdElement {
        &self.b
    }

    /// `[e0, a, b, ab, (ay)b, yb, ay, y]`.
    pub fn generators(&self) -> Vec<CdElement> {
        let (a, y, b) = (&self.a, &self.y, &self.b);
        let ay = a.mul_unchecked(y);
        vec![
            CdElement::one(a.level()),
            a.clone(),
            b.clone(),
            a.mul_unchecked(b),
            ay.mul_unchecked(b),
            y.mul_unchecked(b),
            ay,
            y.clone(),
        ]
    }
}

/// Basis of `V(a;y;b)` after checking that generator `k -> e_k` is
/// multiplicative against the octonion table. With norms `N_a, N_b, N_y` the
/// expected product is `g_i g_j = s(i,j) * (prod of N_u over shared factors u)
/// * g_{i^j}`, where `s` is the level-3 basis sign.
pub fn oct_embed(t: &SpecialTriple) -> Result<SubspaceBasis> {
    let gens = t.generators();
    let norms = [t.a.norm_sq(), t.b.norm_sq(), t.y.norm_sq()];
    let expected = |i: usize, j: usize| -> CdElement {
        let shared = OCTONION_GENERATOR_MASKS[i] & OCTONION_GENERATOR_MASKS[j];
        let mut factor = Rat::one();
        for (bit, n) in norms.iter().enumerate() {
            if shared & (1 << bit) != 0 {
                factor *= n;
            }
        }
        if basis::sign(3, i, j) < 0 {
            factor = -factor;
        }
        gens[i ^ j].scale(&factor)
    };
    verify_products("V(a;y;b) table", &NAMES, &gens, expected)?;
    SubspaceBasis::new(t.a.level(), gens)
}
