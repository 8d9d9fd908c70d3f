use crate::element::CdElement;
use crate::error::{CdError, Result};

/// Checks `gens[i] * gens[j] == expected(i, j)` for all pairs and reports the
/// first offending product.
pub(crate) fn verify_products(
    what: &str,
    names: &[&str],
    gens: &[CdElement],
    expected: impl Fn(usize, usize) -> CdElement,
) -> Result<()> {
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let got = &gens[i] * &gens[j];
            let want = expected(i, j);
            if got != want {
                return Err(CdError::Invariant(format!(
                    "{what}: {} * {} = {got}, expected {want}",
                    names[i], names[j]
                )));
            }
        }
    }
    Ok(())
}
