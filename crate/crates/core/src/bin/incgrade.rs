use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use incidence_grading::json::*;
use incidence_grading::oracle::radical_square_component;
use incidence_grading::{
    bimodule_iso, bimodule_product, check_link_equation, derive_full_bimodules, dual_group, grading_iso,
    validate_datum, verify_grading, Error, GradingDatum, RealizedGrading,
};

/// Build, check and compare group gradings on incidence algebras.
///
/// Every input is a JSON file; `-` or an omitted path reads standard input.
/// Results go to standard output as JSON, errors to standard error as
/// `{"error": …, "message": …}`. Exit status is 0 on success, 1 when the input
/// is well formed but fails a check, 2 when it is malformed.
#[derive(Parser)]
#[command(name = "incgrade", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the realizability conditions of a grading datum.
    Validate { datum: Option<PathBuf> },
    /// Build the graded incidence algebra of a datum.
    Realize {
        datum: Option<PathBuf>,
        /// Print the Hasse diagram of the realized poset in DOT format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Realize a datum and run every oracle check on the result.
    Verify { datum: Option<PathBuf> },
    /// Product of two bimodule classes over a chain H1, H2, H3.
    Product { m12: PathBuf, m23: PathBuf },
    /// Decide whether two bimodule classes are isomorphic.
    IsoBimodule { m: PathBuf, n: PathBuf },
    /// Decide whether two grading data give isomorphic gradings.
    IsoGrading { d: PathBuf, d2: PathBuf },
    /// List the characters of a finite subgroup.
    Dual { subgroup: Option<PathBuf> },
}

enum Failure {
    /// Well-formed input that fails a check; the payload goes to stdout.
    Check(Value),
    /// A library error on well-formed input.
    Op(Error),
    /// Unreadable or malformed input.
    Input(Error),
}

type Outcome = Result<Value, Failure>;

fn read(path: Option<&PathBuf>) -> Result<Value, Failure> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input(Error::Parse(format!("{}: {e}", p.display()))))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(Error::Parse(format!("stdin: {e}"))))?;
            s
        }
    };
    parse(&text).map_err(Failure::Input)
}

fn load<T>(path: Option<&PathBuf>, f: impl Fn(&Value) -> incidence_grading::Result<T>) -> Result<T, Failure> {
    f(&read(path)?).map_err(Failure::Input)
}

fn load_datum(path: Option<&PathBuf>) -> Result<GradingDatum, Failure> {
    load(path, datum_from_json)
}

fn realize_checked(d: &GradingDatum) -> Result<RealizedGrading, Failure> {
    let report = validate_datum(d);
    if !report.is_valid() {
        return Err(Failure::Check(validation_report_to_json(&report)));
    }
    d.realize().map_err(Failure::Op)
}

fn dot(r: &RealizedGrading) -> String {
    let p = r.poset();
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for l in p.labels() {
        out.push_str(&format!("  {l:?};\n"));
    }
    for &(x, y) in p.covers() {
        out.push_str(&format!("  {:?} -> {:?};\n", p.label(x), p.label(y)));
    }
    out.push_str("}\n");
    out
}

/// Validation, the grading check, the link identity, and agreement of every
/// non-cover bimodule computed inside the algebra with the derived class.
fn verify(d: &GradingDatum) -> Outcome {
    let validation = validate_datum(d);
    if !validation.is_valid() {
        return Err(Failure::Check(json!({
            "valid": false,
            "validation": validation_report_to_json(&validation),
        })));
    }
    let r = d.realize().map_err(Failure::Op)?;
    let grading = verify_grading(&r);
    let links = check_link_equation(&r).map_err(Failure::Op)?;
    let full = derive_full_bimodules(d).map_err(Failure::Op)?;
    let sk = d.skeleton();
    let mut products = Vec::new();
    let mut products_ok = true;
    for (&(i, k), expected) in &full {
        if sk.is_cover(i, k) {
            continue;
        }
        let found = radical_square_component(&r, i, k).map_err(Failure::Op)?;
        let agree = bimodule_iso(expected, &found).map_err(Failure::Op)?.is_some();
        products_ok &= agree;
        products.push(json!({
            "from": sk.label(i),
            "to": sk.label(k),
            "agree": agree,
            "derived": bimodule_to_json(expected),
            "computed": bimodule_to_json(&found),
        }));
    }
    let ok = grading.is_clean() && links.is_clean() && products_ok;
    let v = json!({
        "valid": ok,
        "validation": validation_report_to_json(&validation),
        "grading": verification_report_to_json(&grading),
        "links": link_report_to_json(&links),
        "products": products,
    });
    if ok {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn run(cmd: Command) -> Result<Option<Value>, Failure> {
    let v = match cmd {
        Command::Validate { datum } => {
            let report = validate_datum(&load_datum(datum.as_ref())?);
            let v = validation_report_to_json(&report);
            if !report.is_valid() {
                return Err(Failure::Check(v));
            }
            v
        }
        Command::Realize { datum, dot: as_dot } => {
            let r = realize_checked(&load_datum(datum.as_ref())?)?;
            if as_dot {
                emit(&mut std::io::stdout(), &dot(&r));
                return Ok(None);
            }
            realized_to_json(&r)
        }
        Command::Verify { datum } => verify(&load_datum(datum.as_ref())?)?,
        Command::Product { m12, m23 } => {
            let a = load(Some(&m12), bimodule_file_from_json)?;
            let b = load(Some(&m23), bimodule_file_from_json)?;
            bimodule_file_to_json(&bimodule_product(&a, &b).map_err(Failure::Op)?)
        }
        Command::IsoBimodule { m, n } => {
            let a = load(Some(&m), bimodule_file_from_json)?;
            let b = load(Some(&n), bimodule_file_from_json)?;
            let w = bimodule_iso(&a, &b).map_err(Failure::Op)?;
            bimodule_iso_to_json(w.as_deref())
        }
        Command::IsoGrading { d, d2 } => {
            let a = load_datum(Some(&d))?;
            let b = load_datum(Some(&d2))?;
            let w = grading_iso(&a, &b).map_err(Failure::Op)?;
            grading_iso_to_json(&a, &b, w.as_ref())
        }
        Command::Dual { subgroup } => {
            let h = load(subgroup.as_ref(), subgroup_file_from_json)?;
            characters_to_json(&dual_group(&h).map_err(Failure::Op)?)
        }
    };
    Ok(Some(v))
}

/// Writes and flushes, ignoring a closed pipe on the other end.
fn emit(out: &mut impl Write, text: &str) {
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Some(v)) => {
            emit(&mut std::io::stdout(), &(to_text(&v) + "\n"));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Check(v)) => {
            emit(&mut std::io::stdout(), &(to_text(&v) + "\n"));
            ExitCode::from(1)
        }
        Err(Failure::Op(e)) => {
            emit(&mut std::io::stderr(), &(to_text(&error_to_json(&e)) + "\n"));
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            emit(&mut std::io::stderr(), &(to_text(&error_to_json(&e)) + "\n"));
            ExitCode::from(2)
        }
    }
}
