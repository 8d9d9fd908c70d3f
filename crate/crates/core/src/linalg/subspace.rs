use std::fmt;

use super::exact::row_reduce;
use super::matrix::Matrix;
use crate::element::CdElement;
use crate::error::{CdError, Result};
use crate::rational::Rat;

/// An ordered, linearly independent list of elements of one level.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    level: u32,
    vectors: Vec<CdElement>,
}

impl SubspaceBasis {
    pub fn empty(level: u32) -> Self {
        SubspaceBasis {
            level,
            vectors: Vec::new(),
        }
    }

    /// Checked constructor: rejects level mismatches and dependent lists.
    pub fn new(level: u32, vectors: Vec<CdElement>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.level() != level) {
            return Err(CdError::LevelMismatch {
                left: level,
                right: v.level(),
            });
        }
        let r = stacked_rank(level, &vectors);
        if r != vectors.len() {
            return Err(CdError::Precondition(format!(
                "{} vectors span only {r} dimensions",
                vectors.len()
            )));
        }
        Ok(SubspaceBasis { level, vectors })
    }

    /// Caller guarantees independence (e.g. a canonical kernel basis).
    pub(crate) fn from_independent(level: u32, vectors: Vec<CdElement>) -> Self {
        debug_assert_eq!(stacked_rank(level, &vectors), vectors.len());
        SubspaceBasis { level, vectors }
    }

    /// Canonical basis (RREF rows) of the span of arbitrary vectors.
    pub fn span(level: u32, vectors: &[CdElement]) -> Self {
        if vectors.is_empty() {
            return Self::empty(level);
        }
        let e = row_reduce(&rows_matrix(level, vectors));
        let vectors = e
            .rows
            .into_iter()
            .map(|r| CdElement::from_coords(level, r).expect("row length"))
            .collect();
        SubspaceBasis { level, vectors }
    }

    /// `{v : <v, w> = 0 for every w}`.
    pub fn orthogonal_complement_of(level: u32, vectors: &[CdElement]) -> Self {
        if vectors.is_empty() {
            return Self::full(level);
        }
        let ns = row_reduce(&rows_matrix(level, vectors)).nullspace();
        SubspaceBasis {
            level,
            vectors: ns
                .into_iter()
                .map(|v| CdElement::from_coords(level, v).expect("length"))
                .collect(),
        }
    }

    pub fn full(level: u32) -> Self {
        SubspaceBasis {
            level,
            vectors: (0..1usize << level)
                .map(|i| CdElement::basis(level, i))
                .collect(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CdElement] {
        &self.vectors
    }

    pub fn first(&self) -> Option<&CdElement> {
        self.vectors.first()
    }

    pub fn contains(&self, x: &CdElement) -> bool {
        if x.level() != self.level {
            return false;
        }
        if x.is_zero() {
            return true;
        }
        let mut all = self.vectors.clone();
        all.push(x.clone());
        stacked_rank(self.level, &all) == self.dim()
    }

    pub fn contains_all(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    /// Canonical basis of `self + other`.
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        Self::span(self.level, &all)
    }

    /// Whether `self + other` is direct.
    pub fn is_direct_sum_with(&self, other: &SubspaceBasis) -> bool {
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        stacked_rank(self.level, &all) == self.dim() + other.dim()
    }

    /// `self ∩ other`, computed from the kernel of `[self | -other]`.
    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        if self.is_empty() || other.is_empty() {
            return Self::empty(self.level);
        }
        let d = 1usize << self.level;
        let mut columns: Vec<Vec<Rat>> = self.vectors.iter().map(|v| v.coords().to_vec()).collect();
        columns.extend(
            other
                .vectors
                .iter()
                .map(|v| v.coords().iter().map(|c| -c.clone()).collect()),
        );
        let ns = row_reduce(&Matrix::from_columns(d, &columns)).nullspace();
        let vectors = ns
            .iter()
            .map(|coef| self.combine(&coef[..self.dim()]))
            .collect();
        SubspaceBasis::from_independent(self.level, vectors)
    }

    /// `self ∩ span(ws)^⊥`: combinations of the basis orthogonal to every `w`.
    pub fn intersect_orthogonal_complement(&self, ws: &[CdElement]) -> SubspaceBasis {
        if ws.is_empty() || self.is_empty() {
            return self.clone();
        }
        let gram: Vec<Vec<Rat>> = ws
            .iter()
            .map(|w| self.vectors.iter().map(|v| v.dot(w)).collect())
            .collect();
        let ns = row_reduce(&Matrix::from_rows(gram)).nullspace();
        let vectors = ns.iter().map(|coef| self.combine(coef)).collect();
        SubspaceBasis::from_independent(self.level, vectors)
    }

    /// `Σ coef_i v_i`.
    pub fn combine(&self, coef: &[Rat]) -> CdElement {
        assert_eq!(coef.len(), self.dim());
        let mut acc = CdElement::zero(self.level);
        for (c, v) in coef.iter().zip(&self.vectors) {
            if !num_traits::Zero::is_zero(c) {
                acc = &acc + &v.scale(c);
            }
        }
        acc
    }
}

fn rows_matrix(level: u32, vectors: &[CdElement]) -> Matrix {
    debug_assert!(vectors.iter().all(|v| v.level() == level));
    Matrix::from_rows(vectors.iter().map(|v| v.coords().to_vec()).collect())
}

fn stacked_rank(level: u32, vectors: &[CdElement]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        row_reduce(&rows_matrix(level, vectors)).rank()
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.vectors.iter().map(ToString::to_string))
            .finish()
    }
}
