//! Command-line front-end for `cdalg`.
//!
//! [`run`] parses arguments and writes to the given streams, returning the
//! process exit code, so the binary is a thin wrapper and tests can drive
//! the tool in-process.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use cdalg::analysis::{annihilator, decompose, zd_test, zd_test_float_with};
use cdalg::catalog::{
    evaluate, write_entries, CandidateFamily, CatalogEntry, CatalogSummary, ExportFormat,
    FamilyKind, FamilyParams,
};
use cdalg::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use cdalg::{associator, format_element, parse_element, CdElement, CdError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Default ceiling on `-n`; `CDALG_MAX_LEVEL` may raise it.
pub const DEFAULT_MAX_LEVEL: u32 = 8;
pub const MAX_LEVEL_ENV: &str = "CDALG_MAX_LEVEL";

#[derive(Parser, Debug)]
#[command(
    name = "cdalg",
    version,
    about = "Exact arithmetic and zero-divisor analysis in the Cayley-Dickson algebras A_n"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Level n of the algebra A_n (dimension 2^n).
    #[arg(short = 'n', long = "level", global = true, default_value_t = 4)]
    level: u32,
    /// Seed for random draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials per property.
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,
    /// Pivot and associator threshold for the floating-point path.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product xy.
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Conjugate of x.
    Conj {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Associator (x, y, z) = (xy)z - x(yz).
    Assoc {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Euclidean inner product <x, y>.
    Inner {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Annihilator Ker L_a with an exact basis.
    Ann {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Splitting of A_n attached to a doubly pure a.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Whether (a, b) is a zero divisor in A_(n+1).
    Zd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Read a and b as comma-separated floating-point coordinates.
        #[arg(long)]
        float: bool,
    },
    /// Catalog search over a candidate family.
    Search {
        /// basis_pairs, basis_sum_pairs or random_rational.
        #[arg(long, default_value = "basis_pairs")]
        family: String,
        /// Comma-separated basis indices to draw from.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
        /// Number of random pairs, or a cap for the other families.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_support: usize,
        #[arg(long, default_value_t = 3)]
        coeff_bound: i64,
    },
    /// Seeded verification suites; all suites when none is named.
    Verify {
        #[arg(long)]
        suite: Option<String>,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &CdError) -> i32 {
    match e {
        CdError::Parse { .. } | CdError::IndexOutOfRange { .. } => EXIT_USAGE,
        CdError::Invariant(_) | CdError::Io { .. } => EXIT_FAILURE,
        _ => EXIT_PRECONDITION,
    }
}

enum Failure {
    Usage(String),
    Lib(CdError),
    Io(io::Error),
}

impl From<CdError> for Failure {
    fn from(e: CdError) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Level cap: [`DEFAULT_MAX_LEVEL`], raised by `CDALG_MAX_LEVEL` if set
/// higher. The variable never lowers the cap.
pub fn max_level_from_env() -> u32 {
    std::env::var(MAX_LEVEL_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map_or(DEFAULT_MAX_LEVEL, |v| v.max(DEFAULT_MAX_LEVEL))
}

/// Runs the tool with the level cap taken from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_cap(args, out, err, max_level_from_env())
}

pub fn run_with_cap<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, max_level: u32) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err, max_level) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, err: &mut dyn Write, max_level: u32) -> Outcome {
    let cfg = &cli.config;
    if cfg.level > max_level {
        return Err(Failure::Usage(format!(
            "level {} exceeds the cap {max_level} (set {MAX_LEVEL_ENV} to raise it)",
            cfg.level
        )));
    }
    if cfg.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let mut file;
    let out: &mut dyn Write = match &cfg.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let code = match &cli.command {
        Command::Mul { x, y } => {
            let (x, y) = (parse(x, cfg.level)?, parse(y, cfg.level)?);
            emit_element(out, cfg.format, &x.multiply(&y)?)?
        }
        Command::Conj { x } => emit_element(out, cfg.format, &parse(x, cfg.level)?.conjugate())?,
        Command::Assoc { x, y, z } => {
            let (x, y, z) = (
                parse(x, cfg.level)?,
                parse(y, cfg.level)?,
                parse(z, cfg.level)?,
            );
            emit_element(out, cfg.format, &associator(&x, &y, &z)?)?
        }
        Command::Inner { x, y } => {
            let (x, y) = (parse(x, cfg.level)?, parse(y, cfg.level)?);
            let v = x.inner(&y)?.to_string();
            match cfg.format {
                Format::Text => writeln!(out, "{v}")?,
                Format::Json => json_line(out, &serde_json::json!({ "result": v }))?,
                Format::Csv => return Err(csv_unsupported()),
            }
            EXIT_OK
        }
        Command::Ann { a } => cmd_ann(out, cfg, a)?,
        Command::Decompose { a } => cmd_decompose(out, cfg, a)?,
        Command::Zd { a, b, float } => {
            if *float {
                cmd_zd_float(out, cfg, a, b)?
            } else {
                cmd_zd(out, cfg, a, b)?
            }
        }
        Command::Search {
            family,
            indices,
            count,
            max_support,
            coeff_bound,
        } => {
            let kind: FamilyKind = family
                .parse()
                .map_err(|e: CdError| Failure::Usage(e.to_string()))?;
            let params = FamilyParams {
                indices: indices.clone(),
                seed: cfg.seed,
                count: *count,
                max_support: *max_support,
                coeff_bound: *coeff_bound,
            };
            let family = CandidateFamily::new(kind, cfg.level).with_params(params);
            cmd_search(out, err, cfg, &family)?
        }
        Command::Verify { suite } => {
            let suites = match suite {
                Some(name) => vec![name
                    .parse::<Suite>()
                    .map_err(|e| Failure::Usage(e.to_string()))?],
                None => Suite::ALL.to_vec(),
            };
            cmd_verify(out, cfg, &suites)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn parse(text: &str, level: u32) -> Result<CdElement, Failure> {
    Ok(parse_element(text, level)?)
}

fn csv_unsupported() -> Failure {
    Failure::Usage("csv output is only available for search and verify".into())
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    let text = serde_json::to_string(value).map_err(io::Error::from)?;
    writeln!(out, "{text}")
}

fn emit_element(out: &mut dyn Write, format: Format, x: &CdElement) -> Outcome {
    let text = format_element(x);
    match format {
        Format::Text => writeln!(out, "{text}")?,
        Format::Json => json_line(out, &serde_json::json!({ "result": text }))?,
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(EXIT_OK)
}

fn cmd_ann(out: &mut dyn Write, cfg: &Config, a: &str) -> Outcome {
    let a = parse(a, cfg.level)?;
    let ker = annihilator(&a)?;
    let basis: Vec<String> = ker.vectors().iter().map(format_element).collect();
    match cfg.format {
        Format::Text => {
            writeln!(out, "dim {}", ker.dim())?;
            for v in &basis {
                writeln!(out, "{v}")?;
            }
        }
        Format::Json => json_line(
            out,
            &serde_json::json!({
                "level": cfg.level,
                "a": format_element(&a),
                "dim": ker.dim(),
                "basis": basis,
            }),
        )?,
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SummandRow {
    summand: String,
    dim: usize,
    lambda_sq: String,
}

fn cmd_decompose(out: &mut dyn Write, cfg: &Config, a: &str) -> Outcome {
    let a = parse(a, cfg.level)?;
    let d = decompose(&a)?;
    let mut rows = vec![
        SummandRow {
            summand: "H_a".into(),
            dim: d.h_a.dim(),
            lambda_sq: "1".into(),
        },
        SummandRow {
            summand: "Ker T_a".into(),
            dim: d.ker_t.dim(),
            lambda_sq: "1".into(),
        },
        SummandRow {
            summand: "Ker L_a".into(),
            dim: d.ker_l.dim(),
            lambda_sq: "0".into(),
        },
    ];
    for m in &d.middle {
        let lambda_sq = match &m.exact_lambda_sq {
            Some(r) => r.to_string(),
            None => format!("{:.6}", m.lambda_sq),
        };
        rows.push(SummandRow {
            summand: "V_lambda".into(),
            dim: m.dim,
            lambda_sq,
        });
    }
    match cfg.format {
        Format::Text => {
            writeln!(
                out,
                "decomposition of {} at level {} (norm_sq {})",
                format_element(&a),
                cfg.level,
                d.norm_sq
            )?;
            writeln!(out, "{:<10} {:>5}  lambda_sq", "summand", "dim")?;
            for r in &rows {
                writeln!(out, "{:<10} {:>5}  {}", r.summand, r.dim, r.lambda_sq)?;
            }
            writeln!(out, "{:<10} {:>5}", "total", d.total_dim())?;
        }
        Format::Json => json_line(
            out,
            &serde_json::json!({
                "level": cfg.level,
                "a": format_element(&a),
                "norm_sq": d.norm_sq.to_string(),
                "summands": rows,
                "total": d.total_dim(),
            }),
        )?,
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ZdRow {
    level: u32,
    a: String,
    b: String,
    is_zero_divisor: bool,
    criterion_hit: bool,
    verdicts_agree: bool,
    equal_norms: bool,
    ker_dim: usize,
    witness_x: Option<String>,
    witness_y: Option<String>,
    special_couple: bool,
    special_zd: bool,
}

fn cmd_zd(out: &mut dyn Write, cfg: &Config, a: &str, b: &str) -> Outcome {
    let (a, b) = (parse(a, cfg.level)?, parse(b, cfg.level)?);
    let r = zd_test(&a, &b)?;
    let row = ZdRow {
        level: cfg.level,
        a: format_element(&a),
        b: format_element(&b),
        is_zero_divisor: r.is_zero_divisor,
        criterion_hit: r.criterion_eigenvalue_hit,
        verdicts_agree: r.verdicts_agree(),
        equal_norms: r.equal_norms,
        ker_dim: r.ker_dim,
        witness_x: r.witness.as_ref().map(|w| format_element(&w.0)),
        witness_y: r.witness.as_ref().map(|w| format_element(&w.1)),
        special_couple: r.special_couple,
        special_zd: r.special_zd,
    };
    match cfg.format {
        Format::Text => {
            writeln!(out, "pair ({}, {}) in A_{}", row.a, row.b, r.level_pair)?;
            writeln!(out, "is_zero_divisor {}", row.is_zero_divisor)?;
            writeln!(out, "criterion_hit {}", row.criterion_hit)?;
            writeln!(out, "verdicts_agree {}", row.verdicts_agree)?;
            writeln!(out, "equal_norms {}", row.equal_norms)?;
            writeln!(out, "ker_dim {}", row.ker_dim)?;
            if let (Some(x), Some(y)) = (&row.witness_x, &row.witness_y) {
                writeln!(out, "witness_x {x}")?;
                writeln!(out, "witness_y {y}")?;
            }
            writeln!(out, "special_couple {}", row.special_couple)?;
            writeln!(out, "special_zd {}", row.special_zd)?;
        }
        Format::Json => json_line(out, &row)?,
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(if r.verdicts_agree() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn parse_floats(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Failure::Usage(format!("bad coordinate {t:?}: {e}")))
        })
        .collect()
}

fn cmd_zd_float(out: &mut dyn Write, cfg: &Config, a: &str, b: &str) -> Outcome {
    let (a, b) = (parse_floats(a)?, parse_floats(b)?);
    let want = 1usize << cfg.level;
    if a.len() != want || b.len() != want {
        return Err(Failure::Usage(format!(
            "level {} needs {want} coordinates per operand, got {} and {}",
            cfg.level,
            a.len(),
            b.len()
        )));
    }
    let r = zd_test_float_with(&a, &b, cfg.tolerance)?;
    match cfg.format {
        Format::Text => {
            writeln!(out, "float pair in A_{}", r.level_pair)?;
            writeln!(out, "nullity {}", r.nullity)?;
            writeln!(out, "is_zero_divisor {}", r.is_zero_divisor)?;
            writeln!(out, "alternative {}", r.alternative)?;
            writeln!(out, "max_associator {:.3e}", r.max_associator)?;
            writeln!(out, "min_pivot {:.3e}", r.min_pivot)?;
        }
        Format::Json => json_line(
            out,
            &serde_json::json!({
                "level_pair": r.level_pair,
                "nullity": r.nullity,
                "is_zero_divisor": r.is_zero_divisor,
                "alternative": r.alternative,
                "max_associator": r.max_associator,
                "min_pivot": r.min_pivot,
            }),
        )?,
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(EXIT_OK)
}

fn text_table(out: &mut dyn Write, entries: &[CatalogEntry]) -> io::Result<()> {
    writeln!(
        out,
        "{:>5}  {:<24} {:<24} {:>3} {:>5} {:>7}",
        "index", "a", "b", "zd", "crit", "ker_dim"
    )?;
    for e in entries {
        let crit = match e.criterion_hit {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        writeln!(
            out,
            "{:>5}  {:<24} {:<24} {:>3} {:>5} {:>7}",
            e.index,
            e.a,
            e.b,
            if e.is_zero_divisor { "yes" } else { "no" },
            crit,
            e.ker_dim
        )?;
    }
    Ok(())
}

fn cmd_search(
    out: &mut dyn Write,
    err: &mut dyn Write,
    cfg: &Config,
    family: &CandidateFamily,
) -> Outcome {
    let entries = evaluate(family)?;
    let summary = CatalogSummary::of(&entries);
    match cfg.format {
        Format::Json => write_entries(&entries, ExportFormat::JsonLines, &mut *out)?,
        Format::Csv => write_entries(&entries, ExportFormat::Csv, &mut *out)?,
        Format::Text => text_table(out, &entries)?,
    }
    // Machine-readable output stays pure; the summary goes to stderr then.
    if cfg.format == Format::Text && cfg.out.is_none() {
        writeln!(out, "{summary}")?;
    } else {
        writeln!(err, "{summary}")?;
    }
    Ok(if summary.criterion_mismatches == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    suite: &'a str,
    level: u32,
    seed: u64,
    property: &'a str,
    passed: usize,
    failed: usize,
    skipped: usize,
    counterexample: Option<&'a str>,
}

fn cmd_verify(out: &mut dyn Write, cfg: &Config, suites: &[Suite]) -> Outcome {
    let config = SuiteConfig {
        level: cfg.level,
        trials: cfg.trials,
        seed: cfg.seed,
    };
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, config))
        .collect::<cdalg::Result<Vec<SuiteReport>>>()?;
    match cfg.format {
        Format::Text => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", r.render())?;
            }
        }
        Format::Json => {
            for r in &reports {
                json_line(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &reports {
                for p in &r.properties {
                    w.serialize(VerifyRow {
                        suite: r.suite.name(),
                        level: r.level,
                        seed: r.seed,
                        property: &p.name,
                        passed: p.passed,
                        failed: p.failed,
                        skipped: p.skipped,
                        counterexample: p.counterexample.as_deref(),
                    })?;
                }
            }
            w.flush()?;
        }
    }
    Ok(if reports.iter().all(SuiteReport::all_passed) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
