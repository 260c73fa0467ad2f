//! The `twistalg` command line: argument parsing, output formatting and exit codes.
//!
//! Exit codes: 0 success, 1 a cross-check disagreed, 2 usage or input error,
//! 3 a resource guard rejected the request.

pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::StructureConstants;
use crate::classify::{
    brute_force_sym_classes, count_assoc_classes, count_sym_classes, enumerate_assoc_representatives,
    enumerate_sym_classes, iso_test_associative, iso_test_symmetric, Field,
};
use crate::coeff::CoeffDescriptor;
use crate::cohomology::{h2_bruteforce, h2_closed_form, h2_from_resolution, AbelianGroupShape};
use crate::error::{Error, GUARD_ENV};
use crate::group::GroupSpec;

pub use verify::{run_suite, CheckOutcome, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "twistalg", version, about = "H^2 of finite abelian groups and graded twisted algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Emit JSON, to PATH when given and to stdout otherwise.
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1)]
    pub json: Option<Option<PathBuf>>,

    /// Write the output to a file instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Print timings and progress on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Resolution,
    Closed,
    All,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Group as comma separated moduli, e.g. `2,4,3`.
    #[arg(long)]
    pub group: GroupSpec,
    /// Coefficients: `muN:8`, `cstar` or `rstar`.
    #[arg(long)]
    pub coeff: CoeffDescriptor,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Second cohomology with trivial action.
    H2 {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Number of associative classes over C or R.
    CountAssoc {
        #[arg(long)]
        group: GroupSpec,
        /// `C` or `R`.
        #[arg(long, default_value = "C")]
        field: Field,
    },
    /// One bicharacter table per associative class.
    EnumAssoc {
        #[command(flatten)]
        target: Target,
    },
    /// Number of (1,2)-symmetric classes.
    CountSym {
        #[command(flatten)]
        target: Target,
        /// Also scan every unital table and compare.
        #[arg(long)]
        brute: bool,
    },
    /// One standard table per (1,2)-symmetric class.
    EnumSym {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
    /// Graded isomorphism of two tables given as JSON files.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Compare standard forms instead of solving the coboundary equation.
        #[arg(long)]
        symmetric: bool,
    },
    /// Rewrite a table in its standard basis.
    Standardize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the cross-check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// A CSV/table row.
#[derive(Debug, Clone, Serialize)]
struct Row {
    group: String,
    coeff: String,
    quantity: String,
    value: String,
    ref_tag: String,
}

impl Row {
    fn new(group: &GroupSpec, coeff: impl ToString, quantity: &str, value: impl ToString, tag: &str) -> Self {
        Row {
            group: group.to_string(),
            coeff: coeff.to_string(),
            quantity: quantity.to_string(),
            value: value.to_string(),
            ref_tag: tag.to_string(),
        }
    }
}

/// Everything a command produces, before formatting.
struct Report {
    rows: Vec<Row>,
    json: Value,
    /// Human-readable body replacing the row table.
    text: Option<String>,
    status: u8,
}

impl Report {
    fn rows(rows: Vec<Row>, json: Value) -> Self {
        Report { rows, json, text: None, status: EXIT_OK }
    }
}

fn count_json(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn shape_json(s: &AbelianGroupShape) -> Value {
    serde_json::to_value(s).expect("shapes serialize")
}

fn read_table(path: &Path) -> anyhow::Result<StructureConstants> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!(Error::Parse(format!("{}: {e}", path.display()))))
}

fn tables_text(tables: &[StructureConstants]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        out.push_str(&format!("# table {i}\n{t}\n"));
    }
    out
}

fn tables_rows(group: &GroupSpec, coeff: &CoeffDescriptor, tables: &[StructureConstants]) -> anyhow::Result<Vec<Row>> {
    let mut rows = vec![Row::new(group, coeff, "tables", tables.len(), "enumeration")];
    for (i, t) in tables.iter().enumerate() {
        rows.push(Row::new(group, coeff, &format!("table_{i}"), serde_json::to_string(t)?, "enumeration"));
    }
    Ok(rows)
}

fn h2_report(group: &GroupSpec, coeff: &CoeffDescriptor, method: Method) -> anyhow::Result<Report> {
    // R* behaves like μ_2 for every quotient and annihilator, so the matrix methods run over μ_2.
    let matrix_modulus = match (coeff, method) {
        (_, Method::Closed) => None,
        (CoeffDescriptor::MuN(n), _) => Some(*n),
        (CoeffDescriptor::RStar, _) => Some(2),
        (CoeffDescriptor::CStar, _) => {
            return Err(anyhow!(Error::Unsupported(
                "the brute and resolution methods need finite coefficients; use --method closed for cstar".into()
            )))
        }
    };
    let mut results: Vec<(&str, AbelianGroupShape)> = Vec::new();
    if matches!(method, Method::Brute | Method::All) {
        results.push(("brute", h2_bruteforce(group, matrix_modulus.expect("finite"))?));
    }
    if matches!(method, Method::Resolution | Method::All) {
        results.push(("resolution", h2_from_resolution(group, matrix_modulus.expect("finite"))?));
    }
    if matches!(method, Method::Closed | Method::All) {
        results.push(("closed", h2_closed_form(group, coeff)));
    }
    let rows: Vec<Row> = results
        .iter()
        .map(|(m, s)| Row::new(group, coeff, "H2", s, &format!("{m} method")))
        .collect();
    if method != Method::All {
        return Ok(Report::rows(rows, shape_json(&results[0].1)));
    }
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    let verdict = if agree { "MATCH" } else { "MISMATCH" };
    let mut json = serde_json::Map::new();
    for (m, s) in &results {
        json.insert(m.to_string(), shape_json(s));
    }
    json.insert("verdict".into(), json!(verdict));
    let mut rows = rows;
    rows.push(Row::new(group, coeff, "verdict", verdict, "agreement of all methods"));
    let mut report = Report::rows(rows, Value::Object(json));
    if !agree {
        report.status = EXIT_MISMATCH;
    }
    Ok(report)
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::H2 { target, method } => h2_report(&target.group, &target.coeff, *method),
        Command::CountAssoc { group, field } => {
            let n = count_assoc_classes(group, *field);
            let rows = vec![Row::new(group, field, "associative classes", &n, "pairwise gcd count")];
            Ok(Report::rows(rows, json!({ "group": group, "field": field.to_string(), "count": count_json(&n) })))
        }
        Command::EnumAssoc { target } => {
            let n = target.coeff.modulus()?;
            let tables = enumerate_assoc_representatives(&target.group, n)?;
            let mut report = Report::rows(tables_rows(&target.group, &target.coeff, &tables)?, serde_json::to_value(&tables)?);
            report.text = Some(tables_text(&tables));
            Ok(report)
        }
        Command::CountSym { target, brute } => {
            let n = count_sym_classes(&target.group, &target.coeff)?;
            let mut rows = vec![Row::new(&target.group, &target.coeff, "symmetric classes", &n, "free slot count")];
            let mut json = json!({ "group": target.group, "coeff": target.coeff, "count": count_json(&n) });
            let mut status = EXIT_OK;
            if *brute {
                let b = brute_force_sym_classes(&target.group, &target.coeff)?;
                let verdict = if BigUint::from(b) == n { "MATCH" } else { "MISMATCH" };
                if verdict == "MISMATCH" {
                    status = EXIT_MISMATCH;
                }
                rows.push(Row::new(&target.group, &target.coeff, "symmetric classes", b, "exhaustive scan"));
                rows.push(Row::new(&target.group, &target.coeff, "verdict", verdict, "formula vs scan"));
                json["brute"] = json!(b);
                json["verdict"] = json!(verdict);
            }
            let mut report = Report::rows(rows, json);
            report.status = status;
            Ok(report)
        }
        Command::EnumSym { target, cap } => {
            let tables = enumerate_sym_classes(&target.group, &target.coeff, *cap)?;
            let mut report = Report::rows(tables_rows(&target.group, &target.coeff, &tables)?, serde_json::to_value(&tables)?);
            report.text = Some(tables_text(&tables));
            Ok(report)
        }
        Command::Iso { a, b, symmetric } => {
            let (c1, c2) = (read_table(a)?, read_table(b)?);
            let (isomorphic, witness) = if *symmetric {
                (iso_test_symmetric(&c1, &c2)?, Value::Null)
            } else {
                let w = iso_test_associative(&c1, &c2)?;
                (w.is_some(), w.map_or(Value::Null, |l| json!(l.values())))
            };
            let tag = if *symmetric { "standard form comparison" } else { "coboundary equation" };
            let rows = vec![Row::new(c1.group(), c1.coeff(), "isomorphic", isomorphic, tag)];
            let mut report = Report::rows(rows, json!({ "isomorphic": isomorphic, "witness": witness }));
            let mut text = format!("isomorphic: {isomorphic}\n");
            if !witness.is_null() {
                text.push_str(&format!("λ exponents mod {}: {witness}\n", c1.modulus() * c1.group().exponent()));
            }
            report.text = Some(text);
            Ok(report)
        }
        Command::Standardize { input } => {
            let c = read_table(input)?;
            let (std, lambda) = c.to_standard_basis()?;
            let rows = vec![Row::new(std.group(), std.coeff(), "standard table", serde_json::to_string(&std)?, "standard basis")];
            let mut report = Report::rows(rows, serde_json::to_value(&std)?);
            report.text = Some(format!("{std}\nλ exponents mod {}: {:?}\n", lambda.modulus(), lambda.values()));
            Ok(report)
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(*suite);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let rows = outcomes
                .iter()
                .map(|o| Row {
                    group: String::new(),
                    coeff: String::new(),
                    quantity: format!("{}/{}", o.suite, o.name),
                    value: if o.passed { "PASS".into() } else { "FAIL".into() },
                    ref_tag: o.detail.clone(),
                })
                .collect();
            let mut report = Report::rows(rows, json!({ "checks": outcomes, "failed": failed }));
            let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            text.push_str(&format!("{} checks, {failed} failed\n", outcomes.len()));
            report.text = Some(text);
            if failed > 0 {
                report.status = EXIT_MISMATCH;
            }
            Ok(report)
        }
    }
}

fn render_table(rows: &[Row]) -> String {
    let header = ["group", "coeff", "quantity", "value", "ref_tag"];
    let cells: Vec<[&str; 5]> = rows
        .iter()
        .map(|r| [r.group.as_str(), r.coeff.as_str(), r.quantity.as_str(), r.value.as_str(), r.ref_tag.as_str()])
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: [&str; 5]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    for row in cells {
        out.push_str(&line(row));
    }
    out
}

fn render_csv(rows: &[Row]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["group", "coeff", "quantity", "value", "ref_tag"])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Arrays (table exports) get one compact element per line, everything else is pretty printed.
fn json_text(value: &Value) -> anyhow::Result<String> {
    match value {
        Value::Array(items) if !items.is_empty() => {
            let lines = items.iter().map(serde_json::to_string).collect::<Result<Vec<_>, _>>()?;
            Ok(format!("[\n  {}\n]\n", lines.join(",\n  ")))
        }
        other => Ok(format!("{}\n", serde_json::to_string_pretty(other)?)),
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let (format, json_path) = match &cli.json {
        Some(path) => (Format::Json, path.clone()),
        None => (cli.format, None),
    };
    let body = match format {
        Format::Json => json_text(&report.json)?,
        Format::Csv => render_csv(&report.rows)?,
        Format::Table => report.text.clone().unwrap_or_else(|| render_table(&report.rows)),
    };
    match json_path.as_ref().or(cli.output.as_ref()) {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Resource { .. }) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let start = Instant::now();
    let result = dispatch(cli).and_then(|report| emit(cli, &report).map(|()| report.status));
    if cli.verbose > 0 {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = exit_code(&e);
            if code == EXIT_RESOURCE {
                eprintln!("hint: raise --cap where the command has one, otherwise set {GUARD_ENV} (may be slow)");
            }
            code
        }
    }
}
