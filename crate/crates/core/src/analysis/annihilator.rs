use crate::element::CdElement;
use crate::error::{CdError, Result};
use crate::linalg::{left_mult_matrix, nullspace, right_mult_matrix, SubspaceBasis};

/// `Ker L_a`, checked to coincide with `Ker R_a`. Nonzero exactly when `a` is a
/// zero divisor, which needs level >= 4 and `a` doubly pure.
pub fn annihilator(a: &CdElement) -> Result<SubspaceBasis> {
    if a.is_zero() {
        return Err(CdError::ZeroElement("annihilator"));
    }
    let left = nullspace(&left_mult_matrix(a));
    let right = nullspace(&right_mult_matrix(a));
    if !left.same_span(&right) {
        return Err(CdError::Invariant(format!(
            "Ker L and Ker R differ for {a} (dims {} and {})",
            left.dim(),
            right.dim()
        )));
    }
    Ok(left)
}
