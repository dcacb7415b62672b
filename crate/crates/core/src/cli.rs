//! Command-line front end. [`run`] does all the work and returns the exit
//! code and output, so the binary is a thin wrapper and tests can drive it
//! in-process.
//!
//! Exit codes: 0 success, 1 a check or computation failed, 2 usage error
//! (bad arguments or an unreadable input table).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr;
use crate::fixedlocus::{derived_weight_table, enumerate_fixed_points};
use crate::localization::{
    factorize, format_factorization, Check, Localizer, SamplePlan, DEFAULT_SAMPLES, DEFAULT_SEED,
    INTEGRAND_COEFFS,
};
use crate::reference::reference_weight_table;
use crate::table::{cross_check, CrossCheckReport, WeightTable, BUNDLE_E, STANDARD_BUNDLES};
use crate::triangles::deformation_system;

#[derive(Debug, Parser)]
#[command(name = "ctcount", version, about = "Exact Bott localization on the space of complete triangles")]
pub struct Cli {
    /// Number of random (a, b, c) triples to evaluate at (at least 3).
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Seed for the triple generator.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Nu32,
    PorteousNaive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpWhat {
    Weights,
    FixedPoints,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the Veronese count or the uncorrected Porteous number.
    Compute {
        #[arg(value_enum)]
        target: Target,
        /// Use a weight table from JSON instead of the derived one.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Also report the contribution of each integrand term.
        #[arg(long)]
        show_terms: bool,
    },
    /// Run the sanity integrals, table cross-check, triangle membership and
    /// deformation checks.
    Checks {
        /// Corrupt one derived weight before cross-checking.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Export derived data as JSON.
    Dump {
        #[arg(value_enum)]
        what: DumpWhat,
    },
    /// Print the derived weight table, or compare it with the reference.
    Weights {
        #[arg(long)]
        compare: bool,
        /// Compare this JSON table against the derived one instead.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Integrate a class expression such as `c3(E)^2 - c2(E)*c4(E)`.
    Integrate {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

fn int_json(v: &BigInt) -> Value {
    v.to_i64().map(Value::from).unwrap_or_else(|| Value::String(v.to_string()))
}

fn rational_json(v: &BigRational) -> Value {
    if v.is_integer() {
        int_json(&v.to_integer())
    } else {
        Value::String(v.to_string())
    }
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect(),
    )
}

fn checks_text(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{mark}  {:<width$}  {}", c.name, c.detail);
    }
    s
}

fn triples_text(triples: &[[i64; 3]]) -> String {
    let parts: Vec<String> = triples.iter().map(|t| format!("({}, {}, {})", t[0], t[1], t[2])).collect();
    format!("samples (a, b, c): {}\n", parts.join(" "))
}

fn load_table(path: &Option<PathBuf>) -> std::result::Result<WeightTable, Failure> {
    match path {
        None => Ok(derived_weight_table()?),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            WeightTable::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn cross_check_rows(report: &CrossCheckReport) -> Vec<Check> {
    let mut rows = vec![Check {
        name: "weight tables agree".into(),
        passed: report.passed(),
        detail: format!("{} multiset comparisons, {} mismatches", report.comparisons, report.mismatches.len()),
    }];
    for m in &report.mismatches {
        rows.push(Check {
            name: format!("mismatch: point {} bundle {}", m.point, m.bundle),
            passed: false,
            detail: format!("type {} perm {:?}: derived {:?}, reference {:?}", m.orbit_type, m.perm, m.derived, m.reference),
        });
    }
    rows
}

fn compute(cli: &Cli, target: Target, table: &Option<PathBuf>, show_terms: bool) -> std::result::Result<Report, Failure> {
    let loc = Localizer::new(load_table(table)?)?;
    let plan = SamplePlan::new(cli.seed, cli.samples);
    let (name, cls) = match target {
        Target::Nu32 => ("nu32", loc.ultimate_integrand()?),
        Target::PorteousNaive => ("porteous-naive", loc.delta(0)?),
    };
    let integral = loc.integrate_rational(&cls, &plan)?;
    let value = integral.integer()?;
    let mut text = format!("{name} = {value}\n");
    let mut out = json!({
        "value": int_json(&value),
        "samples_used": integral.triples,
        "checks": [],
    });
    if target == Target::PorteousNaive {
        let factors = value.to_u64().map(factorize).unwrap_or_default();
        let f = format_factorization(&factors);
        let _ = writeln!(text, "factorization: {f}");
        out["factorization"] = Value::String(f);
    }
    if show_terms && target == Target::Nu32 {
        let mut terms = Vec::new();
        for (i, term) in loc.integrand_terms()?.iter().enumerate() {
            let v = loc.integrate_rational(term, &plan)?.value;
            let _ = writeln!(text, "term {i} (coefficient {}): {v}", INTEGRAND_COEFFS[i]);
            terms.push(json!({"i": i, "coefficient": INTEGRAND_COEFFS[i], "value": rational_json(&v)}));
        }
        out["terms"] = Value::Array(terms);
    }
    text.push_str(&triples_text(&integral.triples));
    Ok(Report { code: 0, text, json: out })
}

fn checks(cli: &Cli, inject_fault: bool) -> std::result::Result<Report, Failure> {
    let mut derived = derived_weight_table()?;
    let loc = Localizer::new(derived.clone())?;
    let plan = SamplePlan::new(cli.seed, cli.samples);
    let mut rows = loc.sanity_suite(&plan)?;

    if inject_fault {
        let w = &mut derived.points[5].weights.get_mut(BUNDLE_E).expect("E present")[0];
        *w = &*w + &crate::poly::LinearForm::new(1, 0, 0);
    }
    rows.extend(cross_check_rows(&cross_check(&derived, &reference_weight_table())));

    let points = enumerate_fixed_points()?;
    let mut members = 0;
    let mut failed = Vec::new();
    for p in &points {
        if p.is_complete_triangle()? {
            members += 1;
        } else {
            failed.push(p.id);
        }
    }
    rows.push(Check {
        name: "complete triangle membership".into(),
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{members}/{} fixed points", points.len())
        } else {
            format!("{members}/{} fixed points, failing: {failed:?}", points.len())
        },
    });

    let system = deformation_system()?;
    rows.push(Check {
        name: "deformation kernel dimension".into(),
        passed: system.kernel_dim == 6,
        detail: format!("{} (expected 6)", system.kernel_dim),
    });

    let passed = rows.iter().all(|c| c.passed);
    let mut text = checks_text(&rows);
    let n_pass = rows.iter().filter(|c| c.passed).count();
    let _ = writeln!(text, "{n_pass}/{} checks passed", rows.len());
    text.push_str(&triples_text(&plan.triples(loc.table())?));
    let json = json!({
        "value": n_pass,
        "samples_used": plan.triples(loc.table())?,
        "checks": checks_json(&rows),
    });
    Ok(Report { code: if passed { 0 } else { 1 }, text, json })
}

fn dump(what: DumpWhat) -> std::result::Result<Report, Failure> {
    match what {
        DumpWhat::Weights => {
            let text = derived_weight_table()?.to_json()?;
            let json = serde_json::from_str(&text).map_err(Error::from)?;
            Ok(Report { code: 0, text, json })
        }
        DumpWhat::FixedPoints => {
            let points = enumerate_fixed_points()?;
            let mut records = Vec::new();
            let mut text = String::new();
            for p in &points {
                records.push(json!({
                    "id": p.id,
                    "orbit_type": p.orbit_type,
                    "perm": p.perm,
                    "primal": p.primal.to_string(),
                    "dual": p.dual.to_string(),
                    "support": p.support(),
                    "cubic": p.cubic,
                    "fat": p.is_fat(),
                }));
                let _ = writeln!(text, "{p}");
            }
            Ok(Report { code: 0, text, json: Value::Array(records) })
        }
    }
}

fn weights(compare: bool, table: &Option<PathBuf>) -> std::result::Result<Report, Failure> {
    let derived = derived_weight_table()?;
    if compare || table.is_some() {
        let other = match table {
            Some(_) => load_table(table)?,
            None => reference_weight_table(),
        };
        let report = cross_check(&derived, &other);
        let rows = cross_check_rows(&report);
        return Ok(Report {
            code: if report.passed() { 0 } else { 1 },
            text: checks_text(&rows),
            json: json!({"value": report.mismatches.len(), "samples_used": [], "checks": checks_json(&rows)}),
        });
    }
    let mut text = String::new();
    for p in &derived.points {
        let _ = writeln!(text, "#{} type {} perm {:?}", p.id, p.orbit_type, p.perm);
        for (name, _) in STANDARD_BUNDLES {
            let list: Vec<String> = p.bundle(name)?.iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "  {name:<5} {}", list.join(", "));
        }
    }
    let json = serde_json::from_str(&derived.to_json()?).map_err(Error::from)?;
    Ok(Report { code: 0, text, json })
}

fn integrate(cli: &Cli, src: &str, table: &Option<PathBuf>) -> std::result::Result<Report, Failure> {
    let loc = Localizer::new(load_table(table)?)?;
    let cls = expr::evaluate(src, &loc)?;
    let plan = SamplePlan::new(cli.seed, cli.samples);
    let integral = loc.integrate_rational(&cls, &plan)?;
    let mut text = format!("{src} = {}\n", integral.value);
    if !integral.value.is_integer() {
        text.push_str("note: the value is not an integer\n");
    }
    text.push_str(&triples_text(&integral.triples));
    let json = json!({
        "value": rational_json(&integral.value),
        "samples_used": integral.triples,
        "checks": [],
    });
    Ok(Report { code: 0, text, json })
}

fn dispatch(cli: &Cli) -> std::result::Result<Report, Failure> {
    if cli.samples < 3 {
        return Err(Failure::Usage(format!("--samples must be at least 3, got {}", cli.samples)));
    }
    match &cli.command {
        Command::Compute { target, table, show_terms } => compute(cli, *target, table, *show_terms),
        Command::Checks { inject_fault } => checks(cli, *inject_fault),
        Command::Dump { what } => dump(*what),
        Command::Weights { compare, table } => weights(*compare, table),
        Command::Integrate { expr, table } => integrate(cli, expr, table),
    }
}

fn render(cli: &Cli, report: &Report) -> Result<String> {
    let json_default = matches!(cli.command, Command::Dump { what: DumpWhat::Weights });
    if cli.format == Format::Json || json_default {
        if json_default {
            return Ok(report.text.clone());
        }
        let mut s = serde_json::to_string_pretty(&report.json)?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(report.text.clone())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Compute(e)) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let body = match render(&cli, &report) {
        Ok(b) => b,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    match &cli.out {
        None => Outcome { code: report.code, stdout: body, stderr: String::new() },
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code: report.code, stdout: String::new(), stderr: format!("wrote {}\n", path.display()) },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("ctcount").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).code, 2);
        assert_eq!(run_args(&["compute", "nu33"]).code, 2);
        assert_eq!(run_args(&["compute", "nu32", "--samples", "2"]).code, 2);
        assert_eq!(run_args(&["integrate", "--expr", "H^6", "--table", "/nonexistent.json"]).code, 2);
        let help = run_args(&["--help"]);
        assert_eq!(help.code, 0);
        assert!(help.stdout.contains("compute"));
    }

    #[test]
    fn integrate_expression() {
        let out = run_args(&["integrate", "--expr", "H^4*inc"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("H^4*inc = 3\n"));
        let bad = run_args(&["integrate", "--expr", "H^5"]);
        assert_eq!(bad.code, 1);
        assert!(bad.stderr.contains("degree 5"));
    }

    #[test]
    fn weights_text() {
        let out = run_args(&["weights"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("#0 type 1 perm [0, 1, 2]\n  E     5a, 4a+b, 4a+c,"));
    }
}
