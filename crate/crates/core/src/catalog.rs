//! Deterministic candidate searches for zero divisors `(a, b)` in `A_{n+1}`
//! and their JSON lines / CSV export.
//!
//! Candidates are enumerated sequentially, evaluated in parallel, and written
//! back in enumeration order, so output bytes depend only on the parameters.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{is_special_couple, zd_test};
use crate::element::{is_alternative, CdElement};
use crate::error::{CdError, Result};
use crate::linalg::{left_mult_matrix, nullspace};
use crate::parse::format_element;
use crate::random::ElementSampler;

pub const SCHEMA_VERSION: u32 = 1;

/// Draws allowed per requested random pair before giving up on duplicates.
const RANDOM_ATTEMPTS_PER_PAIR: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    BasisPairs,
    BasisSumPairs,
    RandomRational,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::BasisPairs => "basis_pairs",
            FamilyKind::BasisSumPairs => "basis_sum_pairs",
            FamilyKind::RandomRational => "random_rational",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = CdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basis_pairs" => Ok(FamilyKind::BasisPairs),
            "basis_sum_pairs" => Ok(FamilyKind::BasisSumPairs),
            "random_rational" => Ok(FamilyKind::RandomRational),
            _ => Err(CdError::Precondition(format!(
                "unknown family {s:?} (expected basis_pairs, basis_sum_pairs or random_rational)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    /// Basis indices to draw from; `None` means every admissible index.
    pub indices: Option<Vec<usize>>,
    pub seed: u64,
    /// Number of random pairs, or a cap on the other families.
    pub count: Option<usize>,
    pub max_support: usize,
    pub coeff_bound: i64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            indices: None,
            seed: 0,
            count: None,
            max_support: crate::random::DEFAULT_MAX_SUPPORT,
            coeff_bound: crate::random::DEFAULT_COEFF_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFamily {
    pub kind: FamilyKind,
    /// Level of `a` and `b`; the pairs live one level up.
    pub level: u32,
    pub params: FamilyParams,
}

impl CandidateFamily {
    pub fn new(kind: FamilyKind, level: u32) -> Self {
        CandidateFamily {
            kind,
            level,
            params: FamilyParams::default(),
        }
    }

    pub fn with_params(mut self, params: FamilyParams) -> Self {
        self.params = params;
        self
    }

    fn admissible(&self, i: usize) -> bool {
        let d = 1usize << self.level;
        match self.kind {
            FamilyKind::BasisSumPairs => i != 0 && i != d / 2,
            _ => i != 0,
        }
    }

    fn indices(&self) -> Result<Vec<usize>> {
        let d = 1usize << self.level;
        match &self.params.indices {
            None => Ok((0..d).filter(|&i| self.admissible(i)).collect()),
            Some(list) => {
                let mut seen = BTreeSet::new();
                for &i in list {
                    if i >= d {
                        return Err(CdError::IndexOutOfRange {
                            index: i,
                            level: self.level,
                        });
                    }
                    if !self.admissible(i) {
                        return Err(CdError::Precondition(format!(
                            "index {i} is not admissible for {} at level {}",
                            self.kind, self.level
                        )));
                    }
                    seen.insert(i);
                }
                Ok(seen.into_iter().collect())
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.level < 1 {
            return Err(CdError::LevelTooSmall {
                op: self.kind.name(),
                level: self.level,
                min: 1,
            });
        }
        if self.kind == FamilyKind::BasisSumPairs && self.level < 2 {
            return Err(CdError::LevelTooSmall {
                op: self.kind.name(),
                level: self.level,
                min: 2,
            });
        }
        if self.params.max_support == 0 || self.params.coeff_bound < 1 {
            return Err(CdError::Precondition(
                "max_support and coeff_bound must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The candidate pairs of `family`, in a fixed order.
///
/// * `basis_pairs`: `(e_i, e_j)` for `i < j` over the index set.
/// * `basis_sum_pairs`: pairs of distinct `±e_i ± e_j` (doubly pure indices),
///   each pair ordered by canonical text.
/// * `random_rational`: a random trace-zero alternative `a` with `b` either
///   a signed permutation of `a` (equal norm) or an independent draw.
///   Unordered duplicates are skipped.
pub fn enumerate(family: &CandidateFamily) -> Result<Vec<(CdElement, CdElement)>> {
    family.validate()?;
    let n = family.level;
    let idx = family.indices()?;
    let cap = family.params.count.unwrap_or(usize::MAX);
    let out = match family.kind {
        FamilyKind::BasisPairs => {
            let mut out = Vec::new();
            'outer: for (p, &i) in idx.iter().enumerate() {
                for &j in &idx[p + 1..] {
                    if out.len() == cap {
                        break 'outer;
                    }
                    out.push((CdElement::basis(n, i), CdElement::basis(n, j)));
                }
            }
            out
        }
        FamilyKind::BasisSumPairs => {
            let mut terms = Vec::new();
            for (p, &i) in idx.iter().enumerate() {
                for &j in &idx[p + 1..] {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let x = &CdElement::basis(n, i).scale(&crate::rational::int(si))
                            + &CdElement::basis(n, j).scale(&crate::rational::int(sj));
                        terms.push((format_element(&x), x));
                    }
                }
            }
            terms.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Vec::new();
            'pairs: for p in 0..terms.len() {
                for q in p + 1..terms.len() {
                    if out.len() == cap {
                        break 'pairs;
                    }
                    out.push((terms[p].1.clone(), terms[q].1.clone()));
                }
            }
            out
        }
        FamilyKind::RandomRational => {
            let want = family.params.count.unwrap_or(100);
            random_pairs(family, &idx, want)
        }
    };
    Ok(out)
}

fn random_pairs(
    family: &CandidateFamily,
    idx: &[usize],
    want: usize,
) -> Vec<(CdElement, CdElement)> {
    let n = family.level;
    let p = &family.params;
    let mut sampler = ElementSampler::with_shape(p.seed, p.max_support, p.coeff_bound);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    if idx.is_empty() {
        return out;
    }
    let mut attempts = 0;
    while out.len() < want && attempts < want.saturating_mul(RANDOM_ATTEMPTS_PER_PAIR) {
        attempts += 1;
        let a = sampler.supported_on(n, idx);
        if !is_alternative(&a) {
            continue;
        }
        let b = if sampler.index_below(4) == 0 {
            sampler.supported_on(n, idx)
        } else {
            sampler.signed_permutation(&a)
        };
        if b.is_zero() || !is_alternative(&b) {
            continue;
        }
        let (ta, tb) = (format_element(&a), format_element(&b));
        let key = if ta <= tb { (ta, tb) } else { (tb, ta) };
        if seen.insert(key) {
            out.push((a, b));
        }
    }
    out
}

/// One evaluated candidate. Field order is the column order of both export
/// formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub schema_version: u32,
    /// Level of `a` and `b`.
    pub level: u32,
    pub a: String,
    pub b: String,
    pub is_zero_divisor: bool,
    /// Eigenvalue-criterion verdict; `None` when `a` or `b` is not
    /// alternative and the criterion does not apply.
    pub criterion_hit: Option<bool>,
    pub ker_dim: usize,
    pub witness_x: Option<String>,
    pub witness_y: Option<String>,
    pub special_couple: bool,
    pub special_zd: bool,
    pub family: String,
    pub index: usize,
}

impl CatalogEntry {
    pub fn criterion_mismatch(&self) -> bool {
        self.criterion_hit
            .is_some_and(|hit| hit != self.is_zero_divisor)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    pub total: usize,
    pub zero_divisors: usize,
    pub special_zds: usize,
    pub criterion_mismatches: usize,
    pub criterion_not_applicable: usize,
}

impl CatalogSummary {
    pub fn of(entries: &[CatalogEntry]) -> Self {
        CatalogSummary {
            total: entries.len(),
            zero_divisors: entries.iter().filter(|e| e.is_zero_divisor).count(),
            special_zds: entries.iter().filter(|e| e.special_zd).count(),
            criterion_mismatches: entries.iter().filter(|e| e.criterion_mismatch()).count(),
            criterion_not_applicable: entries.iter().filter(|e| e.criterion_hit.is_none()).count(),
        }
    }
}

impl fmt::Display for CatalogSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total {} zero_divisors {} special_zds {} criterion_mismatches {} criterion_not_applicable {}",
            self.total,
            self.zero_divisors,
            self.special_zds,
            self.criterion_mismatches,
            self.criterion_not_applicable
        )
    }
}

fn text(x: &CdElement) -> String {
    format_element(x)
}

/// Evaluates one candidate. Pairs with a non-alternative or impure entry only
/// get the direct nullspace verdict.
pub fn evaluate_pair(
    family: FamilyKind,
    index: usize,
    a: &CdElement,
    b: &CdElement,
) -> Result<CatalogEntry> {
    let applicable = a.is_pure() && b.is_pure() && is_alternative(a) && is_alternative(b);
    let (is_zd, criterion_hit, ker_dim, witness, special_zd) = if applicable {
        let r = zd_test(a, b)?;
        (
            r.is_zero_divisor,
            Some(r.criterion_eigenvalue_hit),
            r.ker_dim,
            r.witness,
            r.special_zd,
        )
    } else {
        let p = CdElement::pair(a, b)?;
        let ker = nullspace(&left_mult_matrix(&p));
        let witness = ker.first().map(|v| v.halves()).transpose()?;
        (!ker.is_empty(), None, ker.dim(), witness, false)
    };
    Ok(CatalogEntry {
        schema_version: SCHEMA_VERSION,
        level: a.level(),
        a: text(a),
        b: text(b),
        is_zero_divisor: is_zd,
        criterion_hit,
        ker_dim,
        witness_x: witness.as_ref().map(|w| text(&w.0)),
        witness_y: witness.as_ref().map(|w| text(&w.1)),
        special_couple: is_special_couple(a, b),
        special_zd,
        family: family.name().to_string(),
        index,
    })
}

/// Evaluates every candidate of `family` in parallel, in enumeration order.
pub fn evaluate(family: &CandidateFamily) -> Result<Vec<CatalogEntry>> {
    let pairs = enumerate(family)?;
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (a, b))| evaluate_pair(family.kind, i, a, b))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    JsonLines,
    Csv,
}

/// Writes `entries` in `format`; I/O failures carry the entry index.
pub fn write_entries<W: Write>(
    entries: &[CatalogEntry],
    format: ExportFormat,
    out: W,
) -> Result<()> {
    match format {
        ExportFormat::JsonLines => {
            let mut out = out;
            for e in entries {
                let line = serde_json::to_string(e).expect("entry serializes");
                writeln!(out, "{line}").map_err(|source| CdError::Io {
                    index: e.index,
                    source,
                })?;
            }
            out.flush().map_err(|source| CdError::Io {
                index: entries.len(),
                source,
            })
        }
        ExportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for e in entries {
                w.serialize(e).map_err(|err| CdError::Io {
                    index: e.index,
                    source: io::Error::from(err),
                })?;
            }
            w.flush().map_err(|source| CdError::Io {
                index: entries.len(),
                source,
            })
        }
    }
}

/// Enumerates, evaluates and writes a whole catalog.
pub fn run_catalog<W: Write>(
    family: &CandidateFamily,
    format: ExportFormat,
    out: W,
) -> Result<(Vec<CatalogEntry>, CatalogSummary)> {
    let entries = evaluate(family)?;
    write_entries(&entries, format, out)?;
    let summary = CatalogSummary::of(&entries);
    Ok((entries, summary))
}
