//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line reaches stdout. Criteria
//! 3 to 11 return a textual report; criterion 12 reruns them and compares
//! the reports byte for byte.

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cdalg::analysis::{
    decompose, is_special_couple, is_special_triple, ker_s_decomposition, oct_embed,
    special_zd_test, zd_test, zd_test_float, SpecialTriple,
};
use cdalg::catalog::{
    evaluate, CandidateFamily, CatalogEntry, CatalogSummary, FamilyKind, FamilyParams,
};
use cdalg::linalg::{eigen_kernel, left_mult_matrix, symmetric_eigen_float};
use cdalg::random::ElementSampler;
use cdalg::rational::{int, to_f64};
use cdalg::suites::{run_suite, Suite, SuiteConfig};
use cdalg::{associator, format_element, parse_element, CdElement};

type Check = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: cdalg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cdalg").chain(args.iter().copied());
    let code = cdalg_cli::run_with_cap(argv, &mut out, &mut err, cdalg_cli::DEFAULT_MAX_LEVEL);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn c1_golden_product() -> Check {
    let args = ["mul", "-n", "4", "e1+e10", "e15-e4"];
    let (code, out, _) = cli(&args);
    ensure(code == 0 && out == "0\n", || {
        format!("exit {code}, stdout {out:?}")
    })?;
    for _ in 0..20 {
        cli(&args);
    }
    let mut times: Vec<Duration> = (0..101)
        .map(|_| {
            let t = Instant::now();
            cli(&args);
            t.elapsed()
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure(median < Duration::from_millis(1), || {
        format!("median runtime {median:?}")
    })?;
    Ok(format!(
        "stdout \"0\", median in-process runtime {median:?}"
    ))
}

fn c2_associator_goldens() -> Check {
    let e = |i| CdElement::basis(4, i);
    let first = lib(associator(&e(1), &e(15), &e(2)))?;
    let second = lib(associator(&e(1), &e(2), &e(15)))?;
    let left = &(&e(1) * &e(15)) * &e(2);
    let right = &e(1) * &(&e(15) * &e(2));
    ensure(format_element(&first) == "2e12", || {
        format!("(e1,e15,e2) = {first}")
    })?;
    ensure(second.is_zero(), || format!("(e1,e2,e15) = {second}"))?;
    ensure(left == -&right, || {
        format!("(e1 e15) e2 = {left}, e1 (e15 e2) = {right}")
    })?;
    Ok(format!(
        "(e1,e15,e2) = {first}, (e1,e2,e15) = 0, (e1e15)e2 = {left} = -e1(e15e2)"
    ))
}

fn c3_hurwitz_boundary() -> Check {
    let mut report = String::new();
    for level in 1..=3 {
        let mut s = ElementSampler::new(2024 + level as u64);
        for t in 0..500 {
            let (x, y) = (s.element(level), s.element(level));
            let lhs = (&x * &y).norm_sq();
            let rhs = x.norm_sq() * y.norm_sq();
            ensure(lhs == rhs, || {
                format!("n={level} trial {t}: |{x} * {y}|^2 = {lhs} vs {rhs}")
            })?;
        }
        let _ = write!(report, "n={level}: 500/500 multiplicative; ");
    }
    let x = lib(parse_element("e1+e10", 4))?;
    let y = lib(parse_element("e15-e4", 4))?;
    let lhs = (&x * &y).norm_sq();
    let rhs = x.norm_sq() * y.norm_sq();
    ensure(lhs != rhs, || "golden witness is multiplicative".into())?;
    let _ = write!(report, "n=4 witness: |xy|^2 = {lhs}, |x|^2|y|^2 = {rhs}");
    Ok(report)
}

fn suite_check(suite: Suite, levels: &[u32], trials: usize, seed: u64) -> Check {
    let mut report = String::new();
    for &level in levels {
        let r = lib(run_suite(
            suite,
            SuiteConfig {
                level,
                trials,
                seed,
            },
        ))?;
        ensure(r.all_passed(), || r.render())?;
        let checked: usize = r.properties.iter().map(|p| p.passed).sum();
        let _ = write!(
            report,
            "n={level}: {} properties, {checked} passing trials; ",
            r.properties.len()
        );
        report.push_str(&r.render());
    }
    Ok(report)
}

fn c4_identity_suite() -> Check {
    suite_check(Suite::Chapter1, &[4, 5], 50, 7)
}

fn c5_decomposition() -> Check {
    let mut s = ElementSampler::with_shape(55, 4, 3);
    let mut report = String::new();
    let mut seen = 0;
    while seen < 20 {
        let a = s.doubly_pure(4);
        if a.is_zero() {
            continue;
        }
        let d = lib(decompose(&a))?;
        lib(d.check_invariants())?;
        let (h, t, l, middle) = d.dims();
        let total = h + t + l + middle.iter().sum::<usize>();
        ensure(total == 16, || format!("{a}: dims sum to {total}"))?;
        ensure(l % 4 == 0 && l <= 12, || format!("{a}: dim Ker L = {l}"))?;
        ensure(middle.iter().all(|m| m % 4 == 0), || {
            format!("{a}: middle dims {middle:?}")
        })?;

        let l2 = left_mult_matrix(&a).square();
        let spectrum = lib(symmetric_eigen_float(&l2))?;
        let n = a.norm_sq();
        for mu in [int(0), -n.clone(), -(int(2) * &n)] {
            let exact = eigen_kernel(&l2, &mu).dim();
            let float = spectrum.multiplicity_near(to_f64(&mu), 1e-6);
            ensure(exact == float, || {
                format!("{a}: mu {mu}: exact {exact}, float {float}")
            })?;
        }
        let _ = write!(report, "{a}: {h}/{t}/{l}/{middle:?}; ");
        seen += 1;
    }
    Ok(report)
}

fn sweep_families() -> Vec<CandidateFamily> {
    let random = |level| {
        let params = FamilyParams {
            seed: 6,
            count: Some(100),
            ..FamilyParams::default()
        };
        CandidateFamily::new(FamilyKind::RandomRational, level).with_params(params)
    };
    vec![
        CandidateFamily::new(FamilyKind::BasisPairs, 3),
        random(3),
        random(4),
    ]
}

fn witness_vanishes(e: &CatalogEntry) -> Result<bool, String> {
    let (Some(x), Some(y)) = (&e.witness_x, &e.witness_y) else {
        return Ok(!e.is_zero_divisor);
    };
    let p = |t: &str| lib(parse_element(t, e.level));
    let pair = lib(CdElement::pair(&p(&e.a)?, &p(&e.b)?))?;
    let w = lib(CdElement::pair(&p(x)?, &p(y)?))?;
    Ok((&pair * &w).is_zero())
}

fn c6_criterion_oracle() -> Check {
    let mut report = String::new();
    let (mut pairs, mut zero_divisors) = (0, 0);
    for family in sweep_families() {
        let entries = lib(evaluate(&family))?;
        let summary = CatalogSummary::of(&entries);
        ensure(summary.criterion_mismatches == 0, || {
            format!("{}: {summary}", family.kind)
        })?;
        for e in &entries {
            ensure(witness_vanishes(e)?, || {
                format!("witness for ({}, {}) does not annihilate", e.a, e.b)
            })?;
        }
        let applicable = summary.total - summary.criterion_not_applicable;
        if family.kind == FamilyKind::BasisPairs {
            ensure(summary.total == 21, || {
                format!("{} basis couples", summary.total)
            })?;
        } else {
            ensure(applicable >= 100, || {
                format!("only {applicable} pairs with a criterion verdict")
            })?;
        }
        pairs += summary.total;
        zero_divisors += summary.zero_divisors;
        let _ = writeln!(report, "{} n={}: {summary}", family.kind, family.level);
    }
    Ok(format!("{pairs} pairs, {zero_divisors} zero divisors, 0 mismatches, all witnesses annihilate\n{report}"))
}

fn c7_associator_kernel() -> Check {
    let mut report = String::new();
    let mut summary = Vec::new();
    for level in [3u32, 4] {
        let d = 1usize << level;
        let mut count = 0;
        let mut dims = std::collections::BTreeSet::new();
        for i in 1..d {
            for j in i + 1..d {
                let (a, b) = (CdElement::basis(level, i), CdElement::basis(level, j));
                if !is_special_couple(&a, &b) {
                    continue;
                }
                let k = lib(ker_s_decomposition(&a, &b))?;
                let (s, p, m) = (k.ker_s_perp.dim(), k.ker_plus.dim(), k.ker_minus.dim());
                ensure(s == p + m && p == m && s % 8 == 0, || {
                    format!("({a}, {b}): {s} = {p} + {m}")
                })?;
                let _ = writeln!(report, "({a}, {b}): {s} = {p} + {m}");
                dims.insert(s);
                count += 1;
            }
        }
        ensure(count > 0, || format!("no basis couples at n={level}"))?;
        summary.push(format!("n={level}: {count} couples, kernel dims {dims:?}"));
    }
    Ok(format!("{}\n{report}", summary.join("; ")))
}

fn c8_top_dimension() -> Check {
    let a = CdElement::basis(4, 1);
    let at = lib(a.tilde())?;
    let r = lib(zd_test(&a, &at))?;
    ensure(r.ker_dim == 12, || {
        format!("dim Ker L_(a, a~) = {}", r.ker_dim)
    })?;
    Ok(format!("a = {a}, a~ = {at}, dim = {}", r.ker_dim))
}

fn c9_octonion_embedding() -> Check {
    let e = |i| CdElement::basis(4, i);
    let triple = lib(SpecialTriple::new(e(1), e(7), e(2)))?;
    let copy = lib(oct_embed(&triple))?;
    ensure(copy.dim() == 8, || {
        format!("octonion copy has dimension {}", copy.dim())
    })?;
    let mut s = ElementSampler::new(9);
    let mut special = 0;
    for t in 0..50 {
        let (a, y, b) = if t % 2 == 0 {
            s.octonion_triple(4)
        } else {
            let mut pick = || CdElement::basis(4, 1 + s.index_below(15));
            (pick(), pick(), pick())
        };
        let forward = is_special_triple(&a, &y, &b);
        let backward = is_special_triple(&b, &y, &a);
        ensure(forward == backward, || {
            format!("{{{a}, {y}, {b}}}: {forward} vs {backward}")
        })?;
        special += usize::from(forward);
    }
    Ok(format!(
        "{{e1,e7,e2}} spans dimension 8; reversal symmetric on 50 triples ({special} special)"
    ))
}

fn c10_float_irrational_couple() -> Check {
    let r = 0.5f64.sqrt();
    let a = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let b = [0.0, r, r, 0.0, 0.0, 0.0, 0.0, 0.0];
    let f = lib(zd_test_float(&a, &b))?;
    ensure(f.nullity == 0 && !f.is_zero_divisor, || {
        format!("nullity {}", f.nullity)
    })?;
    ensure(!f.alternative, || "pair reported alternative".into())?;
    Ok(format!(
        "nullity {}, alternative {}, max associator {:.6}",
        f.nullity, f.alternative, f.max_associator
    ))
}

fn c11_low_level_special() -> Check {
    let mut count = 0;
    for family in sweep_families().into_iter().filter(|f| f.level == 3) {
        for e in lib(evaluate(&family))? {
            if !e.is_zero_divisor {
                continue;
            }
            let a = lib(parse_element(&e.a, 3))?;
            let b = lib(parse_element(&e.b, 3))?;
            ensure(lib(special_zd_test(&a, &b))?, || {
                format!("({a}, {b}) is not a special zero divisor")
            })?;
            count += 1;
        }
    }
    ensure(count > 0, || "no zero divisors found".into())?;
    Ok(format!("{count} zero-divisor pairs, all special"))
}

const REPEATED: [(u32, fn() -> Check); 9] = [
    (3, c3_hurwitz_boundary),
    (4, c4_identity_suite),
    (5, c5_decomposition),
    (6, c6_criterion_oracle),
    (7, c7_associator_kernel),
    (8, c8_top_dimension),
    (9, c9_octonion_embedding),
    (10, c10_float_irrational_couple),
    (11, c11_low_level_special),
];

fn guarded(f: fn() -> Check) -> Check {
    panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        fail(format!("panic: {msg}"))
    })
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut record = |id: u32, name: &str, result: &Check| {
        let (status, detail) = match result {
            Ok(d) => ("PASS", d.lines().next().unwrap_or_default().to_string()),
            Err(e) => ("FAIL", e.clone()),
        };
        if result.is_err() {
            failures += 1;
        }
        let detail: String = detail.chars().take(160).collect();
        println!("criterion {id:>2} {status} {name}: {detail}");
    };

    record(1, "golden product", &guarded(c1_golden_product));
    record(2, "associator goldens", &guarded(c2_associator_goldens));
    let names = [
        "hurwitz boundary",
        "identity suite",
        "decomposition",
        "criterion oracle",
        "associator kernel split",
        "top-dimension annihilator",
        "octonion embedding",
        "float path on an irrational couple",
        "low-level zero divisors are special",
    ];
    let mut first = Vec::new();
    for ((id, f), name) in REPEATED.iter().zip(names) {
        let r = guarded(*f);
        record(*id, name, &r);
        first.push(r);
    }
    let second: Vec<Check> = REPEATED.iter().map(|(_, f)| guarded(*f)).collect();
    let determinism = match first.iter().zip(&second).position(|(x, y)| x != y) {
        None => Ok(format!("{} reports byte-identical on rerun", first.len())),
        Some(i) => fail(format!("criterion {} differs on rerun", REPEATED[i].0)),
    };
    record(12, "determinism", &determinism);

    println!("acceptance: {} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
