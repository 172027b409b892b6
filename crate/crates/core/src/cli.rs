//! The `rhythmbool` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 bound exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::anf::{AnfPoly, Basis, EXHAUSTIVE_BOUND};
use crate::boolvec::{BoolVec, Convention};
use crate::error::{Error, Result};
use crate::modular::Modulus;
use crate::tables::{self, TableId};
use crate::theory;
use crate::verify::{self, Check, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rhythmbool",
    version,
    about = "Discrete averages, the Boolean average and its rhythm polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace a vector through BtoI, Iav and back.
    Eval {
        #[arg(long)]
        n: u32,
        /// Vector literal such as "(0,0,1,1,0,0,0,1)".
        vector: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print Bav_N^0.
    Poly {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_enum, default_value_t = BasisArg::Y)]
        basis: BasisArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run an exhaustive check over a range of moduli.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// A single modulus or an inclusive range "A..B".
        #[arg(long, value_parser = parse_range)]
        n: NRange,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include elapsed times in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Regenerate a reference table.
    Tables {
        #[arg(value_enum)]
        which: TableId,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Enumerate,
    Closed,
    Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    V,
    W,
    Y,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::V => Basis::V,
            BasisArg::W => Basis::W,
            BasisArg::Y => Basis::Y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct NRange {
    start: u32,
    end: u32,
}

fn parse_range(text: &str) -> std::result::Result<NRange, String> {
    let number = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("not a modulus: {s:?}"))
    };
    let (start, end) = match text.split_once("..") {
        Some((a, b)) => (number(a)?, number(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = number(text)?;
            (n, n)
        }
    };
    if start > end {
        return Err(format!("empty range {text:?}"));
    }
    Ok(NRange { start, end })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } | Error::TooWide(_) => EXIT_BOUND,
        _ => EXIT_USAGE,
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Eval { n, vector, format } => cmd_eval(n, &vector, format, out),
        Command::Poly {
            n,
            method,
            basis,
            format,
        } => cmd_poly(n, method, basis.into(), format, out),
        Command::Verify {
            check,
            n,
            jobs,
            format,
            timing,
        } => cmd_verify(check, n, jobs, format, timing, out),
        Command::Tables { which, format } => cmd_tables(which, format, out),
    }
}

fn no_csv(format: Format) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::Parse(
            "csv output is only available for tables".into(),
        ));
    }
    Ok(())
}

fn cmd_eval(n: u32, literal: &str, format: Format, out: &mut dyn Write) -> Result<i32> {
    no_csv(format)?;
    let modulus = Modulus::new(n)?;
    let v = BoolVec::parse(modulus, Convention::NonNeg, literal)?;
    let rhythm = v.btoi()?;
    let averaged = rhythm.rav();
    let proper = rhythm.is_proper().ok();
    let iav = rhythm.iav();
    let image = v.bav();
    debug_assert_eq!(BoolVec::from_increasing(&iav)?, image);
    match format {
        Format::Json => {
            let record = json!({
                "n": n,
                "v": v.coordinates().iter().map(|&b| b as u8).collect::<Vec<_>>(),
                "btoi": rhythm.values(),
                "rav": averaged.values(),
                "proper": proper,
                "iav": iav.values(),
                "bav": image.coordinates().iter().map(|&b| b as u8).collect::<Vec<_>>(),
                "support": image.supp(),
            });
            writeln!(out, "{record}").map_err(io)?;
        }
        _ => {
            let proper_text = match proper {
                Some(true) => "yes",
                Some(false) => "no, rotate once",
                None => "n/a (fewer than two onsets)",
            };
            let support: Vec<String> = image.supp().iter().map(|i| i.to_string()).collect();
            let lines = [
                format!("N            = {n}"),
                format!("v            = {v}"),
                format!("BtoI(v)      = {rhythm}"),
                format!("Rav          = {averaged}"),
                format!("proper       = {proper_text}"),
                format!("Iav          = {iav}"),
                format!("Bav(v)       = {image}"),
                format!("supp(Bav(v)) = {{{}}}", support.join(",")),
            ];
            for line in lines {
                writeln!(out, "{line}").map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// `Bav_N^0` by the requested method, in the requested basis.
pub fn derive_polynomial(modulus: Modulus, method: &str, basis: Basis) -> Result<AnfPoly> {
    let y_form = match method {
        "enumerate" => return theory::enumerated_bav0(modulus)?.to_basis(basis),
        "closed" => theory::closed_form_bav0(modulus)?,
        "recurrence" => theory::recurrence_chain(modulus)?
            .pop()
            .expect("chain is non-empty"),
        other => return Err(Error::Parse(format!("unknown method {other:?}"))),
    };
    if basis == Basis::V && modulus.get() > EXHAUSTIVE_BOUND {
        return Err(Error::BoundExceeded {
            n: modulus.get(),
            bound: EXHAUSTIVE_BOUND,
        });
    }
    y_form.to_basis(basis)
}

fn cmd_poly(
    n: u32,
    method: Method,
    basis: Basis,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    no_csv(format)?;
    let name = match method {
        Method::Enumerate => "enumerate",
        Method::Closed => "closed",
        Method::Recurrence => "recurrence",
    };
    let poly = derive_polynomial(Modulus::new(n)?, name, basis)?;
    match format {
        Format::Json => writeln!(out, "{}", poly.to_json()),
        _ => writeln!(out, "{poly}"),
    }
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn report_line(r: &VerificationReport) -> String {
    let status = if r.passed { "PASS" } else { "FAIL" };
    let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut line = format!("{status} {} N={} {}", r.check, r.n, counts.join(" "));
    if let Some(ms) = r.elapsed_ms {
        line.push_str(&format!(" elapsed_ms={ms:.3}"));
    }
    if let Some(c) = &r.counterexample {
        line.push_str(&format!(" counterexample: {c}"));
    }
    line
}

fn cmd_verify(
    check: Check,
    range: NRange,
    jobs: Option<usize>,
    format: Format,
    timing: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    no_csv(format)?;
    let moduli = (range.start..=range.end)
        .map(Modulus::new)
        .collect::<Result<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Parse(format!("cannot start worker pool: {e}")))?;
    let mut reports = pool.install(|| verify::run_all(&[check], &moduli))?;
    if !timing {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    match format {
        Format::Json => {
            let body = serde_json::to_value(&reports).expect("reports serialize");
            writeln!(out, "{}", json!({ "passed": failed == 0, "reports": body })).map_err(io)?;
        }
        _ => {
            for r in &reports {
                writeln!(out, "{}", report_line(r)).map_err(io)?;
            }
            let summary = if failed == 0 {
                format!("ok: {} of {} passed", reports.len(), reports.len())
            } else {
                format!("failed: {failed} of {} did not pass", reports.len())
            };
            writeln!(out, "{summary}").map_err(io)?;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_tables(which: TableId, format: Format, out: &mut dyn Write) -> Result<i32> {
    let table = tables::build(which)?;
    let rendered = match format {
        Format::Text => table.to_text(),
        Format::Json => format!("{}\n", table.to_json()),
        Format::Csv => table.to_csv(),
    };
    out.write_all(rendered.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

/// Parses the JSON emitted by `verify --format json`.
pub fn parse_verify_json(text: &str) -> Result<(bool, Vec<Value>)> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let passed = value
        .get("passed")
        .and_then(Value::as_bool)
        .ok_or_else(|| Error::Parse("missing passed".into()))?;
    let reports = value
        .get("reports")
        .and_then(Value::as_array)
        .cloned()
        .ok_or_else(|| Error::Parse("missing reports".into()))?;
    Ok((passed, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rhythmbool").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..16"), Ok(NRange { start: 3, end: 16 }));
        assert_eq!(parse_range("3..=5"), Ok(NRange { start: 3, end: 5 }));
        assert_eq!(parse_range("6"), Ok(NRange { start: 6, end: 6 }));
        assert!(parse_range("9..4").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["poly", "--n", "3"]).0, EXIT_OK);
        assert_eq!(
            call(&["poly", "--n", "17", "--method", "enumerate"]).0,
            EXIT_BOUND
        );
        assert_eq!(call(&["poly", "--n", "30", "--basis", "v"]).0, EXIT_BOUND);
        assert_eq!(call(&["poly", "--n", "65"]).0, EXIT_BOUND);
        assert_eq!(call(&["eval", "--n", "3", "(0,1)"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "closure", "--n", "11"]).0, EXIT_BOUND);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn eval_trace() {
        let (code, out, _) = call(&["eval", "--n", "8", "(0,0,1,1,0,0,0,1)"]);
        assert_eq!(code, 0);
        assert!(out.contains("BtoI(v)      = (2,3,7)\n"));
        assert!(out.contains("proper       = no, rotate once\n"));
        assert!(out.contains("Iav          = (0,2,5)\n"));
        assert!(out.contains("Bav(v)       = (1,0,1,0,0,1,0,0)\n"));
        assert!(out.contains("supp(Bav(v)) = {0,2,5}\n"));
    }

    #[test]
    fn verify_json() {
        let (code, out, _) = call(&["verify", "parental", "--n", "6", "--format", "json"]);
        assert_eq!(code, 0);
        let (passed, reports) = parse_verify_json(&out).unwrap();
        assert!(passed);
        assert_eq!(reports[0]["counts"]["pairs"], 6);
        assert!(reports[0].get("elapsed_ms").is_none());
    }
}
