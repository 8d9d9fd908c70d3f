//! Seeded verification suites.
//!
//! Each property draws its own random stream, seeded from the suite seed and
//! the property name, so reports are reproducible and adding a property does
//! not perturb the others. Failures record the first counterexample as
//! canonical element text.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    decompose, is_special_couple, is_special_triple, ker_s_decomposition, oct_embed, s_operator,
    special_zd_test, t_operator, vq_embed, zd_test, SpecialTriple,
};
use crate::element::{associator, commutator, is_alternative, CdElement};
use crate::error::{CdError, Result};
use crate::linalg::{
    agree_on, eigen_kernel, left_mult_matrix, nullspace, right_mult_matrix, symmetric_eigen_float,
    OperatorMatrix, SubspaceBasis,
};
use crate::parse::{format_element, parse_element};
use crate::random::ElementSampler;
use crate::rational::{int, to_f64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    CoreIdentities,
    Chapter1,
    Chapter2,
    HurwitzBoundary,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::CoreIdentities,
        Suite::Chapter1,
        Suite::Chapter2,
        Suite::HurwitzBoundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CoreIdentities => "core_identities",
            Suite::Chapter1 => "chapter1",
            Suite::Chapter2 => "chapter2",
            Suite::HurwitzBoundary => "hurwitz_boundary",
        }
    }

    fn properties(self) -> &'static [Property] {
        match self {
            Suite::CoreIdentities => CORE,
            Suite::Chapter1 => CHAPTER1,
            Suite::Chapter2 => CHAPTER2,
            Suite::HurwitzBoundary => HURWITZ,
        }
    }

    /// Names of the properties that run at `level`.
    pub fn property_names(self, level: u32) -> Vec<&'static str> {
        self.properties()
            .iter()
            .filter(|p| p.applies(level))
            .map(|p| p.name)
            .collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CdError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                CdError::Precondition(format!(
                    "unknown suite {s:?} (expected core_identities, chapter1, chapter2 or hurwitz_boundary)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub level: u32,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Trials whose random draw did not meet the property's hypothesis.
    pub skipped: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub level: u32,
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyReport> {
        self.properties.iter().filter(|p| p.failed > 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// Fixed-width table, one line per property, then an overall verdict.
    pub fn render(&self) -> String {
        let width = self
            .properties
            .iter()
            .map(|p| p.name.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} level {} seed {} trials {}",
            self.suite, self.level, self.seed, self.trials
        );
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>6}",
            "property", "pass", "fail", "skip"
        );
        for p in &self.properties {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>6}  {:>6}",
                p.name, p.passed, p.failed, p.skipped
            );
            if let Some(c) = &p.counterexample {
                let _ = writeln!(out, "  counterexample: {c}");
            }
        }
        let failed = self.failures().count();
        if failed == 0 {
            let _ = writeln!(out, "result: PASS ({} properties)", self.properties.len());
        } else {
            let _ = writeln!(
                out,
                "result: FAIL ({failed} of {} properties)",
                self.properties.len()
            );
        }
        out
    }
}

/// Runs every property of `suite` that applies at `config.level`.
pub fn run_suite(suite: Suite, config: SuiteConfig) -> Result<SuiteReport> {
    if config.trials == 0 {
        return Err(CdError::Precondition("trials must be at least 1".into()));
    }
    let properties = suite
        .properties()
        .par_iter()
        .filter(|p| p.applies(config.level))
        .map(|p| p.run(config))
        .collect();
    Ok(SuiteReport {
        suite,
        level: config.level,
        seed: config.seed,
        trials: config.trials,
        properties,
    })
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

type Check = fn(&mut ElementSampler, u32) -> Result<Outcome>;

struct Property {
    name: &'static str,
    min_level: u32,
    max_level: u32,
    /// Runs once regardless of the trial count (fixed examples).
    single: bool,
    /// Largest support of sampled elements.
    support: usize,
    check: Check,
}

impl Property {
    const fn new(name: &'static str, min_level: u32, check: Check) -> Self {
        Property {
            name,
            min_level,
            max_level: u32::MAX,
            single: false,
            support: crate::random::DEFAULT_MAX_SUPPORT,
            check,
        }
    }

    const fn up_to(mut self, max_level: u32) -> Self {
        self.max_level = max_level;
        self
    }

    const fn once(mut self) -> Self {
        self.single = true;
        self
    }

    const fn support(mut self, support: usize) -> Self {
        self.support = support;
        self
    }

    fn applies(&self, level: u32) -> bool {
        (self.min_level..=self.max_level).contains(&level)
    }

    fn seed(&self, seed: u64) -> u64 {
        // FNV-1a over the name, mixed with the suite seed.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.name.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }

    fn run(&self, config: SuiteConfig) -> PropertyReport {
        let mut sampler = ElementSampler::with_shape(
            self.seed(config.seed),
            self.support,
            crate::random::DEFAULT_COEFF_BOUND,
        );
        let trials = if self.single { 1 } else { config.trials };
        let mut report = PropertyReport {
            name: self.name.to_string(),
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexample: None,
        };
        for _ in 0..trials {
            let outcome = (self.check)(&mut sampler, config.level)
                .unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
            match outcome {
                Outcome::Pass => report.passed += 1,
                Outcome::Skip => report.skipped += 1,
                Outcome::Fail(c) => {
                    report.failed += 1;
                    report.counterexample.get_or_insert(c);
                }
            }
        }
        report
    }
}

fn show(named: &[(&str, &CdElement)]) -> String {
    named
        .iter()
        .map(|(n, x)| format!("{n} = {}", format_element(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn verdict(ok: bool, named: &[(&str, &CdElement)]) -> Result<Outcome> {
    Ok(if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(show(named))
    })
}

fn unit(level: u32) -> CdElement {
    CdElement::one(level)
}

fn real(level: u32, r: &Rat) -> CdElement {
    unit(level).scale(r)
}

/// `b` made orthogonal to `a` without leaving the rationals.
fn orthogonalize(b: &CdElement, a: &CdElement) -> CdElement {
    &b.scale(&a.norm_sq()) - &a.scale(&a.dot(b))
}

/// `x` is orthogonal to every vector in `vs`.
fn orthogonal_to_all(x: &CdElement, vs: &[CdElement]) -> bool {
    vs.iter().all(|v| x.dot(v).is_zero())
}

// ---------------------------------------------------------------- core

const CORE: &[Property] = &[
    Property::new("conjugation_reverses_products", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        let ok = (&x * &y).conjugate() == &y.conjugate() * &x.conjugate();
        verdict(ok, &[("x", &x), ("y", &y)])
    }),
    Property::new("characteristic_equation", 0, |s, n| {
        let x = s.element(n);
        let lhs = &(&(&x * &x) - &x.scale(&x.trace())) + &real(n, &x.norm_sq());
        verdict(lhs.is_zero(), &[("x", &x)])
    }),
    Property::new("flexible_law", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        verdict(associator(&x, &y, &x)?.is_zero(), &[("x", &x), ("y", &y)])
    }),
    Property::new("table_product_matches_recursion", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        verdict(
            x.multiply(&y)? == x.multiply_recursive(&y)?,
            &[("x", &x), ("y", &y)],
        )
    }),
    Property::new("conjugation_is_isometric_involution", 0, |s, n| {
        let x = s.element(n);
        let c = x.conjugate();
        verdict(
            c.conjugate() == x && c.norm_sq() == x.norm_sq(),
            &[("x", &x)],
        )
    }),
    Property::new("inner_product_from_trace", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        let t = (&x * &y.conjugate()).trace() / int(2);
        verdict(x.inner(&y)? == t, &[("x", &x), ("y", &y)])
    }),
    Property::new("square_vanishes_only_at_zero", 0, |s, n| {
        let x = s.element(n);
        verdict(!(&x * &x).is_zero(), &[("x", &x)])
    }),
    Property::new("canonical_text_round_trips", 0, |s, n| {
        let x = s.element(n);
        verdict(parse_element(&format_element(&x), n)? == x, &[("x", &x)])
    }),
    Property::new("rank_plus_nullity", 0, |s, n| {
        let x = s.element(n);
        let l = left_mult_matrix(&x);
        verdict(l.rank() + nullspace(&l).dim() == 1 << n, &[("x", &x)])
    }),
];

// ------------------------------------------------------------ chapter1 suite

fn zero_divisor_pair(s: &mut ElementSampler, n: u32) -> (CdElement, CdElement) {
    s.zero_divisor_pair(n)
}

const CHAPTER1: &[Property] = &[
    Property::new("conjugate_slot_negates_associator", 0, |s, n| {
        let (x, y, z) = (s.element(n), s.element(n), s.element(n));
        let a = associator(&x, &y, &z)?;
        let neg = -&a;
        let ok = associator(&x.conjugate(), &y, &z)? == neg
            && associator(&x, &y.conjugate(), &z)? == neg
            && associator(&x, &y, &z.conjugate())? == neg;
        verdict(ok, &[("x", &x), ("y", &y), ("z", &z)])
    }),
    Property::new("associator_is_traceless", 0, |s, n| {
        let (x, y, z) = (s.element(n), s.element(n), s.element(n));
        verdict(
            associator(&x, &y, &z)?.trace().is_zero(),
            &[("x", &x), ("y", &y), ("z", &z)],
        )
    }),
    Property::new("commutator_is_traceless", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        verdict(
            commutator(&x, &y)?.trace().is_zero(),
            &[("x", &x), ("y", &y)],
        )
    }),
    Property::new("associator_expansion_identity", 0, |s, n| {
        let (x, y, z, w) = (s.element(n), s.element(n), s.element(n), s.element(n));
        let lhs = &(&x * &associator(&y, &z, &w)?) + &(&associator(&x, &y, &z)? * &w);
        let rhs = &(&associator(&(&x * &y), &z, &w)? - &associator(&x, &(&y * &z), &w)?)
            + &associator(&x, &y, &(&z * &w))?;
        verdict(lhs == rhs, &[("x", &x), ("y", &y), ("z", &z), ("w", &w)])
    }),
    Property::new("multiplications_have_conjugate_adjoints", 0, |s, n| {
        let (x, y, z) = (s.element(n), s.element(n), s.element(n));
        let a = x.inner(&(&y * &z))?;
        let ok = a == (&x * &z.conjugate()).inner(&y)? && a == (&y.conjugate() * &x).inner(&z)?;
        verdict(ok, &[("x", &x), ("y", &y), ("z", &z)])
    }),
    Property::new("product_norm_ignores_left_conjugation", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        let ok = (&x * &y).norm_sq() == (&x.conjugate() * &y).norm_sq();
        verdict(ok, &[("x", &x), ("y", &y)])
    }),
    Property::new("product_norm_symmetries", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        let m = (&x * &y).norm_sq();
        let ok = m == (&x.conjugate() * &y).norm_sq()
            && m == (&x * &y.conjugate()).norm_sq()
            && m == (&y * &x).norm_sq();
        verdict(ok, &[("x", &x), ("y", &y)])
    }),
    Property::new("zero_products_survive_swaps_and_conjugation", 4, |s, n| {
        let (x, y) = zero_divisor_pair(s, n);
        let witnessed = (&y * &x).is_zero()
            && (&x.conjugate() * &y).is_zero()
            && (&x * &y.conjugate()).is_zero();
        let (u, v) = (s.doubly_pure(n), s.element(n));
        let zs = [
            (&u * &v).is_zero(),
            (&v * &u).is_zero(),
            (&u.conjugate() * &v).is_zero(),
            (&u * &v.conjugate()).is_zero(),
        ];
        let consistent = zs.iter().all(|&z| z == zs[0]);
        verdict(
            witnessed && consistent,
            &[("x", &x), ("y", &y), ("u", &u), ("v", &v)],
        )
    }),
    Property::new("annihilating_pairs_are_doubly_pure", 4, |s, n| {
        let (x, y) = zero_divisor_pair(s, n);
        let ok = x.trace().is_zero()
            && y.trace().is_zero()
            && x.is_doubly_pure()?
            && y.is_doubly_pure()?;
        verdict(ok, &[("x", &x), ("y", &y)])
    }),
    Property::new("square_zero_only_for_zero", 0, |s, n| {
        let x = s.element(n);
        let p = s.pure(n.max(1));
        let ok = !(&x * &x).is_zero() && (&p * &p) == real(n.max(1), &-p.norm_sq());
        verdict(ok, &[("x", &x), ("p", &p)])
    }),
    Property::new("pure_multiplications_are_skew", 1, |s, n| {
        let x = s.pure(n);
        let ok =
            left_mult_matrix(&x).is_skew_symmetric() && right_mult_matrix(&x).is_skew_symmetric();
        verdict(ok, &[("x", &x)])
    }),
    Property::new("swapped_halves_partner", 4, |s, n| {
        let (x, y) = zero_divisor_pair(s, n);
        let (y1, y2) = y.halves()?;
        let partner = CdElement::pair(&-&y2.conjugate(), &y1)?;
        verdict((&partner * &x.check()?).is_zero(), &[("x", &x), ("y", &y)])
    }),
    Property::new("doubly_pure_iff_orthogonal_to_unit_tilde", 1, |s, n| {
        let x = s.pure(n);
        let et = CdElement::e0_tilde(n)?;
        verdict(x.is_doubly_pure()? == x.dot(&et).is_zero(), &[("x", &x)])
    }),
    Property::new("tilde_product_identities", 2, |s, n| {
        let (a, b) = (s.doubly_pure(n), s.doubly_pure(n));
        let et = CdElement::e0_tilde(n)?;
        let at = a.tilde()?;
        let na = a.norm_sq();
        let ok = &a * &et == at
            && &et * &a == -&at
            && &a * &at == et.scale(&-na.clone())
            && &at * &a == et.scale(&na)
            && a.dot(&at).is_zero()
            && &at * &b == -&(&a * &b).tilde()?;
        verdict(ok, &[("a", &a), ("b", &b)])
    }),
    Property::new("tilde_orthogonality_identities", 2, |s, n| {
        let (a, b) = (s.doubly_pure(n), s.doubly_pure(n));
        let at = a.tilde()?;
        let b1 = orthogonalize(&b, &a);
        let b2 = orthogonalize(&b, &at);
        let ok = (&(&at * &b1) + &(&b1.tilde()? * &a)).is_zero() && &a * &b2 == &b2.tilde()? * &at;
        verdict(ok, &[("a", &a), ("b", &b)])
    }),
    Property::new("tilde_preserves_annihilation", 4, |s, n| {
        let (a, y) = zero_divisor_pair(s, n);
        let witnessed = (&a * &y.tilde()?).is_zero();
        let x = s.element(n);
        let consistent = (&a * &x).is_zero() == (&a * &x.tilde()?).is_zero();
        verdict(witnessed && consistent, &[("a", &a), ("y", &y), ("x", &x)])
    }),
    Property::new("annihilator_is_two_sided", 2, |s, n| {
        let a = if n >= 4 && s.index_below(2) == 0 {
            zero_divisor_pair(s, n).0
        } else {
            s.doubly_pure(n)
        };
        let left = nullspace(&left_mult_matrix(&a));
        let right = nullspace(&right_mult_matrix(&a));
        verdict(left.same_span(&right), &[("a", &a)])
    }),
    Property::new("doubly_pure_splitting", 2, |s, n| {
        let a = s.doubly_pure(n);
        let d = decompose(&a)?;
        // `decompose` checks the dimension count and the mod-4 constraints;
        // here the quaternion part must also be invariant under L_a.
        let la = left_mult_matrix(&a);
        let closed = la.images().len() == 1 << n
            && d.h_a
                .vectors()
                .iter()
                .all(|v| la.apply(v).map(|w| d.h_a.contains(&w)).unwrap_or(false));
        verdict(closed, &[("a", &a)])
    })
    .support(4),
    Property::new("left_square_is_negative_semidefinite", 1, |s, n| {
        let x = s.pure(n);
        let l2 = left_mult_matrix(&x).square();
        let spectrum = symmetric_eigen_float(&l2)?;
        let scale = to_f64(&x.norm_sq()).max(1.0);
        verdict(
            l2.is_symmetric() && spectrum.max() <= 1e-9 * scale,
            &[("x", &x)],
        )
    }),
    Property::new("exact_and_float_multiplicities_agree", 2, |s, n| {
        let a = s.doubly_pure(n);
        let l2 = left_mult_matrix(&a).square();
        let spectrum = symmetric_eigen_float(&l2)?;
        let na = a.norm_sq();
        let nf = to_f64(&na);
        let ok = [Rat::zero(), -na.clone(), int(-2) * &na].iter().all(|mu| {
            eigen_kernel(&l2, mu).dim()
                == spectrum.multiplicity_near(to_f64(mu), 1e-6 * nf.max(1.0))
        });
        verdict(ok, &[("a", &a)])
    })
    .support(4),
];

// ------------------------------------------------------------ chapter2 suite

fn rescaled_couple(s: &mut ElementSampler, n: u32) -> (CdElement, CdElement) {
    let (a, b) = s.equal_norm_couple(n);
    let k = s.nonzero_int(s.coeff_bound);
    (a, b.scale(&int(k)))
}

/// Alternative pairs for the zero-divisor criterion: special couples, equal
/// norm non-orthogonal pairs, independent draws and dependent pairs.
fn alternative_pair(s: &mut ElementSampler, n: u32) -> (CdElement, CdElement) {
    match s.index_below(4) {
        0 => s.equal_norm_couple(n),
        1 => {
            let (a, b) = s.equal_norm_couple(n);
            // a' = 3a + 4b has norm 5|a| and is not orthogonal to 5a.
            let a2 = &a.scale(&int(3)) + &b.scale(&int(4));
            if is_alternative(&a2) {
                (a2, a.scale(&int(5)))
            } else {
                (a, b)
            }
        }
        2 => (s.alternative(n), s.alternative(n)),
        _ => {
            let a = s.alternative(n);
            let k = if s.index_below(2) == 0 { 1 } else { -1 };
            (a.clone(), a.scale(&int(k)))
        }
    }
}

fn v_ab(a: &CdElement, b: &CdElement) -> Vec<CdElement> {
    vec![unit(a.level()), a.clone(), b.clone(), a * b]
}

const CHAPTER2: &[Property] = &[
    Property::new("alternative_units_act_invertibly", 1, |s, n| {
        let a = s.alternative(n);
        let na = a.norm_sq();
        let l = left_mult_matrix(&a);
        let id = OperatorMatrix::identity(n);
        let det_want = num_traits::pow(na.clone(), 1usize << (n - 1));
        let ok = nullspace(&l).is_empty()
            && l.square() == id.scale(&-na.clone())
            && l.transpose().compose(&l) == id.scale(&na)
            && l.determinant() == det_want;
        verdict(ok, &[("a", &a)])
    }),
    Property::new("couple_spans_quaternion_copy", 2, |s, n| {
        let (a, b) = rescaled_couple(s, n);
        vq_embed(&a, &b)?;
        let ab = &a * &b;
        let ok = &b * &ab == a.scale(&b.norm_sq()) && &a * &ab == b.scale(&-a.norm_sq());
        verdict(ok, &[("a", &a), ("b", &b)])
    }),
    Property::new("associator_kernel_splits", 2, |s, n| {
        let (a, b) = rescaled_couple(s, n);
        let d = ker_s_decomposition(&a, &b)?;
        let s_op = s_operator(&a, &b)?;
        let ok = s_op.annihilates(&d.v_ab)
            && s_op.is_skew_symmetric()
            && d.ker_s_perp.dim() == 2 * d.ker_plus.dim()
            && d.ker_s_perp.dim() % 8 == 0;
        verdict(ok, &[("a", &a), ("b", &b)])
    }),
    Property::new("total_associator_identity", 2, |s, n| {
        let (a, b) = rescaled_couple(s, n);
        let perp = SubspaceBasis::orthogonal_complement_of(n, &v_ab(&a, &b));
        let t = t_operator(&(&a + &b));
        let s_op = s_operator(&a, &b)?;
        let la = left_mult_matrix(&a);
        let rb = right_mult_matrix(&b);
        let two = int(2);
        let first = s_op.scale(&int(-1)).add(&rb.compose(&la).scale(&two));
        let second = s_op.add(&la.compose(&rb).scale(&two));
        verdict(
            agree_on(&t, &first, &perp) && agree_on(&t, &second, &perp),
            &[("a", &a), ("b", &b)],
        )
    }),
    Property::new("kernel_witness_forms_coincide", 2, |s, n| {
        let (a, b) = s.equal_norm_couple(n);
        let na = a.norm_sq();
        let p = CdElement::pair(&a, &b)?;
        let vs = v_ab(&a, &b);
        let s_op = s_operator(&a, &b)?;
        let kt = nullspace(&t_operator(&(&a + &b))).intersect_orthogonal_complement(&vs);
        let minus_two_n = (int(-2) * &na).recip();
        for y in kt.vectors() {
            let from_s = s_op.apply(y)?.scale(&minus_two_n);
            let from_ab = -&(&a * &(&b * y)).scale(&na.recip());
            if from_s != from_ab || !(&p * &CdElement::pair(&from_s, y)?).is_zero() {
                return verdict(false, &[("a", &a), ("b", &b), ("y", y)]);
            }
        }
        let t = t_operator(&(&a + &b));
        for v in nullspace(&left_mult_matrix(&p)).vectors() {
            let (x, y) = v.halves()?;
            let ok = orthogonal_to_all(&y, &vs)
                && t.apply(&y)?.is_zero()
                && x == s_op.apply(&y)?.scale(&minus_two_n);
            if !ok {
                return verdict(false, &[("a", &a), ("b", &b), ("x", &x), ("y", &y)]);
            }
        }
        Ok(Outcome::Pass)
    }),
    Property::new("kernel_dimension_bound", 2, |s, n| {
        let (a, b) = s.equal_norm_couple(n);
        let p = CdElement::pair(&a, &b)?;
        let ker = nullspace(&left_mult_matrix(&p)).dim();
        let plus = nullspace(&left_mult_matrix(&(&a + &b))).dim();
        verdict(ker + 4 + 2 * plus <= 1 << n, &[("a", &a), ("b", &b)])
    }),
    Property::new("criterion_matches_nullspace", 1, |s, n| {
        let (a, b) = alternative_pair(s, n.max(2));
        let r = zd_test(&a, &b)?;
        let witness_ok = match &r.witness {
            Some((x, y)) => (&r.pair() * &CdElement::pair(x, y)?).is_zero(),
            None => !r.is_zero_divisor,
        };
        verdict(r.verdicts_agree() && witness_ok, &[("a", &a), ("b", &b)])
    })
    .support(3),
    Property::new("zero_divisor_necessary_conditions", 2, |s, n| {
        let (a, b) = s.equal_norm_couple(n);
        let p = CdElement::pair(&a, &b)?;
        let ker = nullspace(&left_mult_matrix(&p));
        if ker.is_empty() {
            return Ok(Outcome::Skip);
        }
        let na = a.norm_sq();
        let ab_inner = a.dot(&b);
        let l2 = left_mult_matrix(&(&a + &b)).square();
        let t = t_operator(&(&a + &b));
        let two_n = int(2) * &na;
        let basics = a.trace().is_zero()
            && b.trace().is_zero()
            && na == b.norm_sq()
            && ab_inner.clone() * &ab_inner != na.clone() * b.norm_sq();
        for v in ker.vectors() {
            let (x, y) = v.halves()?;
            let ok = basics
                && associator(&a, &y, &b)? == x.scale(&-two_n.clone())
                && associator(&a, &x, &b)? == y.scale(&two_n)
                && l2.apply(&y)? == y.scale(&-two_n.clone())
                && t.apply(&y)? == y.scale(&(int(-2) * &ab_inner));
            if !ok {
                return verdict(false, &[("a", &a), ("b", &b), ("x", &x), ("y", &y)]);
            }
        }
        Ok(Outcome::Pass)
    }),
    Property::new("alternative_sum_forces_special", 3, |s, n| {
        let (a, b) = s.equal_norm_couple(n);
        if !is_alternative(&(&a + &b)) || !zd_test(&a, &b)?.is_zero_divisor {
            return Ok(Outcome::Skip);
        }
        verdict(special_zd_test(&a, &b)?, &[("a", &a), ("b", &b)])
    }),
    Property::new("low_level_zero_divisors_are_special", 3, |s, n| {
        let (a, b) = alternative_pair(s, n);
        let r = zd_test(&a, &b)?;
        if !r.is_zero_divisor {
            return Ok(Outcome::Skip);
        }
        verdict(r.special_zd, &[("a", &a), ("b", &b)])
    })
    .up_to(3),
    Property::new("special_triples_give_octonion_copies", 3, |s, n| {
        let (a, y, b) = s.octonion_triple(n);
        let t = SpecialTriple::new(a.clone(), y.clone(), b.clone())?;
        let ok = oct_embed(&t).map(|v| v.dim() == 8).unwrap_or(false);
        verdict(ok, &[("a", &a), ("y", &y), ("b", &b)])
    }),
    Property::new("special_triple_reversal_symmetry", 2, |s, n| {
        let (a, y, b) = if n >= 3 && s.index_below(2) == 0 {
            s.octonion_triple(n)
        } else {
            let d = 1usize << n;
            let i = 1 + s.index_below(d - 1);
            let mut j = 1 + s.index_below(d - 1);
            while j == i {
                j = 1 + s.index_below(d - 1);
            }
            let mut k = 1 + s.index_below(d - 1);
            while k == i || k == j {
                k = 1 + s.index_below(d - 1);
            }
            (
                CdElement::basis(n, i),
                CdElement::basis(n, k),
                CdElement::basis(n, j),
            )
        };
        let ok = is_special_triple(&a, &y, &b) == is_special_triple(&b, &y, &a)
            && is_special_couple(&a, &b) == is_special_couple(&b, &a);
        verdict(ok, &[("a", &a), ("y", &y), ("b", &b)])
    }),
];

// ----------------------------------------------------- Hurwitz boundary

fn golden_pair(n: u32) -> Result<(CdElement, CdElement)> {
    Ok((parse_element("e1+e10", n)?, parse_element("e15-e4", n)?))
}

const HURWITZ: &[Property] = &[
    Property::new("norm_is_multiplicative", 0, |s, n| {
        let (x, y) = (s.element(n), s.element(n));
        let ok = (&x * &y).norm_sq() == x.norm_sq() * y.norm_sq();
        verdict(ok, &[("x", &x), ("y", &y)])
    })
    .up_to(3),
    Property::new("left_multiplication_is_invertible", 0, |s, n| {
        let x = s.element(n);
        verdict(nullspace(&left_mult_matrix(&x)).is_empty(), &[("x", &x)])
    })
    .up_to(3),
    Property::new("every_element_is_alternative", 0, |s, n| {
        let x = s.element(n);
        verdict(is_alternative(&x), &[("x", &x)])
    })
    .up_to(3),
    Property::new("golden_witness_breaks_norm_multiplicativity", 4, |_, n| {
        let (x, y) = golden_pair(n)?;
        let xy = &x * &y;
        let ok = xy.is_zero() && xy.norm_sq() != x.norm_sq() * y.norm_sq();
        verdict(
            ok && x.norm_sq() * y.norm_sq() == int(4),
            &[("x", &x), ("y", &y)],
        )
    })
    .once(),
    Property::new("golden_witness_is_not_alternative", 4, |_, n| {
        let (x, _) = golden_pair(n)?;
        verdict(!is_alternative(&x), &[("x", &x)])
    })
    .once(),
    Property::new(
        "random_zero_divisors_break_norm_multiplicativity",
        4,
        |s, n| {
            let (x, y) = s.zero_divisor_pair(n);
            let ok = (&x * &y).is_zero() && !(x.norm_sq() * y.norm_sq()).is_zero();
            verdict(ok, &[("x", &x), ("y", &y)])
        },
    ),
];
