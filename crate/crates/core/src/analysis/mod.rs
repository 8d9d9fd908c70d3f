//! Zero-divisor theory built on the exact layers: annihilators, the splitting
//! of `A_n` attached to a doubly pure element, special couples and triples,
//! and the eigenvalue criterion for pairs `(a, b)` in `A_{n+1}`.
//!
//! Unit-norm hypotheses are replaced by scaled statements throughout: for
//! `N = |a|^2` the quaternion table of `{e0, ã, a, ẽ0}` carries factors of
//! `N`, the λ = 1 eigenvalue of `-L_a^2` sits at `N`, and the zero-divisor
//! criterion tests the eigenvalue `-2N` of `L_{a+b}^2`.

mod annihilator;
mod couple;
mod decomposition;
mod table;
mod triple;
mod zero_divisor;

pub use annihilator::annihilator;
pub use couple::{
    is_special_couple, ker_s_decomposition, s_operator, special_couple_violation, t_operator,
    vq_embed, KerSDecomposition,
};
pub use decomposition::{decompose, hq_embed, Decomposition, MiddleEigenspace};
pub use triple::{is_special_triple, oct_embed, SpecialTriple, OCTONION_GENERATOR_MASKS};
pub use zero_divisor::{
    special_zd_test, zd_test, zd_test_float, zd_test_float_with, FloatZdReport, ZdReport,
    FLOAT_INDETERMINATE_FLOOR, FLOAT_PIVOT_THRESHOLD,
};
