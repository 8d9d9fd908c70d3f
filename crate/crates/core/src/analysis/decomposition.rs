use num_traits::{Signed, ToPrimitive, Zero};

use super::table::verify_products;
use crate::element::CdElement;
use crate::error::{CdError, Result};
use crate::linalg::{
    eigen_kernel, left_mult_matrix, nullspace, symmetric_eigen_float, FloatSpectrum, SubspaceBasis,
};
use crate::rational::{common_denominator, to_f64, Rat};

/// Float eigenvalues within this distance of a known value are identified
/// with it.
const MATCH_TOL: f64 = 1e-6;

/// One summand `V_λ = {x : a(ax) = -λ² N x}` with `λ ∉ {0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MiddleEigenspace {
    /// λ² for the normalized element `a / |a|`.
    pub lambda_sq: f64,
    /// The same value exactly, when the eigenvalue of `L_a^2` is rational.
    pub exact_lambda_sq: Option<Rat>,
    pub dim: usize,
}

/// `A_n = H_a ⊕ Ker T̃_a ⊕ Ker L_a ⊕ (⊕ V_λ)` for a doubly pure `a`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub a: CdElement,
    pub norm_sq: Rat,
    /// `[e0, ã, a, ẽ0]`.
    pub h_a: SubspaceBasis,
    /// Eigenvectors of `L_a^2` at `-N` orthogonal to `H_a`.
    pub ker_t: SubspaceBasis,
    pub ker_l: SubspaceBasis,
    pub middle: Vec<MiddleEigenspace>,
    pub spectrum: FloatSpectrum,
}

impl Decomposition {
    pub fn level(&self) -> u32 {
        self.a.level()
    }

    pub fn dims(&self) -> (usize, usize, usize, Vec<usize>) {
        (
            self.h_a.dim(),
            self.ker_t.dim(),
            self.ker_l.dim(),
            self.middle.iter().map(|m| m.dim).collect(),
        )
    }

    pub fn total_dim(&self) -> usize {
        self.h_a.dim()
            + self.ker_t.dim()
            + self.ker_l.dim()
            + self.middle.iter().map(|m| m.dim).sum::<usize>()
    }

    /// Dimension count, the mod-4 constraints on `Ker L_a` and each `V_λ`,
    /// and `dim Ker L_a <= 2^n - 4`.
    pub fn check_invariants(&self) -> Result<()> {
        let d = 1usize << self.level();
        let fail = |msg: String| {
            Err(CdError::Invariant(format!(
                "decomposition of {}: {msg}",
                self.a
            )))
        };
        if self.h_a.dim() != 4 {
            return fail(format!("H_a has dimension {}", self.h_a.dim()));
        }
        if self.total_dim() != d {
            return fail(format!(
                "summand dimensions add to {} not {d}",
                self.total_dim()
            ));
        }
        if !self.ker_l.dim().is_multiple_of(4) || self.ker_l.dim() > d - 4 {
            return fail(format!("dim Ker L_a = {}", self.ker_l.dim()));
        }
        if let Some(m) = self.middle.iter().find(|m| m.dim % 4 != 0) {
            return fail(format!(
                "V_λ at λ² = {} has dimension {}",
                m.lambda_sq, m.dim
            ));
        }
        Ok(())
    }
}

fn require_doubly_pure_nonzero(op: &'static str, a: &CdElement) -> Result<()> {
    if a.is_zero() {
        return Err(CdError::ZeroElement(op));
    }
    if !a.is_doubly_pure()? {
        return Err(CdError::NotDoublyPure(op));
    }
    Ok(())
}

/// Basis `[e0, ã, a, ẽ0]` of the quaternion copy `H_a`, after checking its
/// multiplication table with `N = |a|^2`:
///
/// ```text
///        e0    ã      a      ẽ0
///  e0    e0    ã      a      ẽ0
///  ã     ã    -N e0   N ẽ0  -a
///  a     a    -N ẽ0  -N e0   ã
///  ẽ0    ẽ0    a     -ã     -e0
/// ```
pub fn hq_embed(a: &CdElement) -> Result<SubspaceBasis> {
    require_doubly_pure_nonzero("hq_embed", a)?;
    let n = a.level();
    let e0 = CdElement::one(n);
    let et = CdElement::e0_tilde(n)?;
    let at = a.tilde()?;
    let nn = a.norm_sq();
    let gens = vec![e0.clone(), at.clone(), a.clone(), et.clone()];
    let neg = |x: &CdElement| -x;
    let table = |i: usize, j: usize| -> CdElement {
        match (i, j) {
            (0, k) | (k, 0) => gens[k].clone(),
            (1, 1) => e0.scale(&-nn.clone()),
            (1, 2) => et.scale(&nn),
            (1, 3) => neg(a),
            (2, 1) => et.scale(&-nn.clone()),
            (2, 2) => e0.scale(&-nn.clone()),
            (2, 3) => at.clone(),
            (3, 1) => a.clone(),
            (3, 2) => neg(&at),
            (3, 3) => neg(&e0),
            _ => unreachable!(),
        }
    };
    verify_products("H_a table", &["e0", "ã", "a", "ẽ0"], &gens, table)?;
    SubspaceBasis::new(n, gens)
}

/// Splits `A_n` along the spectrum of `L_a^2` for a doubly pure nonzero `a`.
///
/// `Ker L_a` and `Ker T̃_a` are exact (the latter as the `-N` eigenspace minus
/// `H_a`). The remaining eigenvalues of `L_a^2` may be irrational; they come
/// from the Jacobi spectrum, and any that is rational (necessarily `k / D^2`
/// with `D` the coordinate denominator) has its dimension confirmed by an
/// exact kernel. `lambda_sq` values are normalized by `N`, so `decompose(r a)`
/// reports the same summands as `decompose(a)`.
pub fn decompose(a: &CdElement) -> Result<Decomposition> {
    require_doubly_pure_nonzero("decompose", a)?;
    let nn = a.norm_sq();
    let h_a = hq_embed(a)?;
    let l = left_mult_matrix(a);
    let l2 = l.square();
    let ker_l = nullspace(&l);
    let minus_n = eigen_kernel(&l2, &-nn.clone());
    if !minus_n.contains_all(&h_a) {
        return Err(CdError::Invariant("L_a^2 is not -N on H_a".into()));
    }
    let ker_t = minus_n.intersect_orthogonal_complement(h_a.vectors());

    let spectrum = symmetric_eigen_float(&l2)?;
    let nf = to_f64(&nn);
    let tol = MATCH_TOL * nf.max(1.0);
    if spectrum.max() > tol {
        return Err(CdError::Invariant(format!(
            "L_a^2 has positive eigenvalue {}",
            spectrum.max()
        )));
    }
    if spectrum.multiplicity_near(0.0, tol) != ker_l.dim()
        || spectrum.multiplicity_near(-nf, tol) != minus_n.dim()
    {
        return Err(CdError::Invariant(
            "float multiplicities disagree with exact kernels".into(),
        ));
    }

    let den = common_denominator(a.coords());
    let den_sq = Rat::from_integer(&den * &den);
    let den_sq_f = to_f64(&den_sq);
    let mut middle = Vec::new();
    for (mu, mult) in spectrum.clusters() {
        if mu.abs() <= tol || (mu + nf).abs() <= tol {
            continue;
        }
        let k = (mu * den_sq_f).round();
        let candidate =
            Rat::from_integer(num_bigint::BigInt::from(k.to_i64().unwrap_or(i64::MAX))) / &den_sq;
        let mut exact = None;
        if (to_f64(&candidate) - mu).abs() <= tol && !candidate.is_zero() {
            let dim = eigen_kernel(&l2, &candidate).dim();
            if dim > 0 {
                if dim != mult {
                    return Err(CdError::Invariant(format!(
                        "eigenvalue {candidate}: exact dimension {dim}, float multiplicity {mult}"
                    )));
                }
                exact = Some((-candidate / &nn).abs());
            }
        }
        middle.push(MiddleEigenspace {
            lambda_sq: -mu / nf,
            exact_lambda_sq: exact,
            dim: mult,
        });
    }

    let dec = Decomposition {
        a: a.clone(),
        norm_sq: nn,
        h_a,
        ker_t,
        ker_l,
        middle,
        spectrum,
    };
    dec.check_invariants()?;
    Ok(dec)
}
