use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use nbasis::driver::{self, Hints, Mode, RunConfig, Status};
use nbasis::newton::NumberFieldInput;
use nbasis::{Error, IntPolynomial};
use num_bigint::BigInt;
use serde_json::Value;

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_REGULAR: u8 = 3;
const EXIT_UNFACTORED: u8 = 4;

/// Computes N-integral bases of number fields Q[x]/(f) from Newton polygons
/// modulo a composite N.
#[derive(Parser, Debug)]
#[command(name = "nbasis", version)]
struct Cli {
    /// Defining polynomial: an inline degree-ascending list such as "[-49,0,0,1]",
    /// or a file holding such a list or a JSON input document.
    #[arg(long)]
    poly: String,

    /// Take N from the discriminant of f with the primes up to deg f removed.
    #[arg(long, conflicts_with = "modulus")]
    from_disc: bool,

    /// Use this N (decimal); it must have no prime factor up to deg f.
    #[arg(long)]
    modulus: Option<String>,

    /// JSON file of integers known to be squarefree: a list, or {"hints": [...]}.
    #[arg(long)]
    hints: Option<PathBuf>,

    /// Write the output document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads for the modulus worklist (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,

    /// Log level on stderr: error, warn, info, debug or trace.
    #[arg(long, default_value = "warn")]
    log: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

/// Fields of an input document; any may be absent.
#[derive(Default)]
struct InputDoc {
    f: Option<IntPolynomial>,
    mode: Option<Mode>,
    hints: Vec<BigInt>,
}

fn int_value(v: &Value) -> Result<BigInt, Failure> {
    let text = match v {
        Value::String(s) => s.trim().trim_start_matches('+').to_string(),
        Value::Number(n) => n.to_string(),
        other => return Err(Failure::Usage(format!("expected an integer, got {other}"))),
    };
    text.parse().map_err(|_| Failure::Usage(format!("malformed integer {text:?}")))
}

fn int_list(v: &Value, what: &str) -> Result<Vec<BigInt>, Failure> {
    v.as_array()
        .ok_or_else(|| Failure::Usage(format!("{what} must be a list")))?
        .iter()
        .map(int_value)
        .collect()
}

fn parse_modulus(text: &str) -> Result<BigInt, Failure> {
    text.trim().parse().map_err(|_| Failure::Usage(format!("malformed modulus {text:?}")))
}

fn parse_document(v: &Value) -> Result<InputDoc, Failure> {
    let obj = v.as_object().ok_or_else(|| Failure::Usage("input document must be a JSON object".into()))?;
    let mut doc = InputDoc::default();
    if let Some(f) = obj.get("f") {
        doc.f = Some(IntPolynomial::from_ints(int_list(f, "\"f\"")?));
    }
    doc.mode = match obj.get("mode").and_then(Value::as_str) {
        None => None,
        Some("disc") => Some(Mode::FromDiscriminant),
        Some("N") => {
            let n = obj.get("N").ok_or_else(|| Failure::Usage("mode \"N\" needs a field \"N\"".into()))?;
            Some(Mode::Explicit(int_value(n)?))
        }
        Some(other) => return Err(Failure::Usage(format!("unknown mode {other:?}"))),
    };
    if let Some(h) = obj.get("hints") {
        doc.hints = int_list(h, "\"hints\"")?;
    }
    Ok(doc)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_poly(arg: &str) -> Result<InputDoc, Failure> {
    let trimmed = arg.trim();
    if trimmed.starts_with('[') {
        return Ok(InputDoc { f: Some(IntPolynomial::parse(trimmed)?), ..InputDoc::default() });
    }
    let text = read(Path::new(arg))?;
    match serde_json::from_str::<Value>(&text) {
        Ok(v @ Value::Object(_)) => parse_document(&v),
        Ok(v @ Value::Array(_)) => Ok(InputDoc { f: Some(IntPolynomial::from_ints(int_list(&v, "polynomial")?)), ..InputDoc::default() }),
        _ => Ok(InputDoc { f: Some(IntPolynomial::parse(text.trim())?), ..InputDoc::default() }),
    }
}

fn load_hints(path: &Path) -> Result<Vec<BigInt>, Failure> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("hints file: {e}")))?;
    match &v {
        Value::Object(o) => int_list(o.get("hints").unwrap_or(&Value::Null), "\"hints\""),
        _ => int_list(&v, "hints"),
    }
}

fn execute(cli: &Cli) -> Result<Status, Failure> {
    let doc = load_poly(&cli.poly)?;
    let f = doc.f.ok_or_else(|| Failure::Usage("the input document has no \"f\"".into()))?;
    let f = NumberFieldInput::new(f)?;
    let mode = match (&cli.modulus, cli.from_disc, doc.mode) {
        (Some(m), _, _) => Mode::Explicit(parse_modulus(m)?),
        (None, true, _) => Mode::FromDiscriminant,
        (None, false, Some(mode)) => mode,
        (None, false, None) => return Err(Failure::Usage("choose --from-disc or --modulus N".into())),
    };
    let mut hints = doc.hints;
    if let Some(path) = &cli.hints {
        hints.extend(load_hints(path)?);
    }
    let cfg = RunConfig::new(mode).with_hints(Hints::new(hints)?);
    let report = driver::run(&f, &cfg)?;
    log::info!("finished in {:.3?}", report.elapsed);

    let mut text = serde_json::to_string_pretty(&report.to_document()).map_err(|e| Failure::Other(e.to_string()))?;
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Other(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Other(e.to_string()))?,
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new().parse_filters(&cli.log).init();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("nbasis: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    match execute(&cli) {
        Ok(Status::Ok) => ExitCode::from(EXIT_OK),
        Ok(Status::NotRegular) => ExitCode::from(EXIT_NOT_REGULAR),
        Ok(Status::Unfactored) => ExitCode::from(EXIT_UNFACTORED),
        Err(Failure::Usage(msg)) => {
            eprintln!("nbasis: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("nbasis: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
