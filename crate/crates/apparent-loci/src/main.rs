//! Command-line front end: read JSON, run the library, print a line-oriented
//! report, and write the machine-readable result next to the input.
//!
//! Exit codes are a stable contract:
//!   0  success (for `trivialize`, all verification checks passed)
//!   2  parse error (malformed JSON, invalid curve, off-curve point, …)
//!   3  a dependence point fell outside the rational repairable places
//!   4  the input frame is singular
//!   5  verification failure (rejected certificate, escaped singular point,
//!      or fuzz instances that failed)
//!   1  anything else

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use apparent_loci::error::Error;
use apparent_loci::places::Divisor;
use apparent_loci::report::json::{
    CertificateJson, CheckJson, FuzzConfigJson, InstanceJson, RrInputJson, SystemJson,
    curve_from_json,
};
use apparent_loci::report::{run_fuzz, FuzzConfig};
use apparent_loci::trivializer::{trivialize, verify_certificate};
use apparent_loci::{emit_system, rr_basis};

#[derive(Parser)]
#[command(name = "apparent-loci", version, about = "Exact frame normalization \
over hyperelliptic function fields: move poles to one place, repair dependence \
points, certify the count bound, and gauge differential systems through the \
result.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a basis of the functions with pole divisor bounded by D.
    ///
    /// Input: {"curve": [...], "divisor": "k*(x0,y0) + m*inf + n*closed[q]"}.
    /// Writes the basis to <file>.basis.json.
    Rr { file: PathBuf },
    /// Normalize a frame and write a verified certificate.
    ///
    /// Input: {"curve", "p", "basepoint", "frame"}. Exit code 0 only if
    /// every independent verification check passes.
    Trivialize {
        file: PathBuf,
        /// Certificate destination (default: <file>.cert.json).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Gauge a differential system through a certificate's change of basis.
    ///
    /// Prints the classified singular support of the transformed system and
    /// writes it to <system>.gauged.json. Exit code 5 if any singular point
    /// is unaccounted for.
    Gauge { system: PathBuf, cert: PathBuf },
    /// Generate, normalize, re-verify, and gauge seeded random instances.
    ///
    /// Input: {"curves": [[...], ...], "ps": [...], "instances": n,
    /// "seed": s}. APPARENT_LOCI_SEED overrides the seed. Writes the
    /// summary to <config>.summary.json.
    Fuzz { config: PathBuf },
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`... | head`),
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidCurve(_)
        | Error::BadPlace { .. }
        | Error::CurveMismatch => 2,
        Error::IrrationalLocus { .. } => 3,
        Error::SingularFrame => 4,
        Error::Verification(_) => 5,
        _ => 1,
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Rr { file } => cmd_rr(&file),
        Command::Trivialize { file, output } => cmd_trivialize(&file, output),
        Command::Gauge { system, cert } => cmd_gauge(&system, &cert),
        Command::Fuzz { config } => cmd_fuzz(&config),
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        at: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        at: 0,
        msg: format!("{}: {e}", path.display()),
    })
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| {
        Error::Verification(format!("cannot serialize {}: {e}", path.display()))
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| {
        Error::Verification(format!("cannot write {}: {e}", path.display()))
    })
}

/// `foo.json` → `foo.<suffix>.json`; `foo` → `foo.<suffix>.json`.
fn derived_path(input: &Path, suffix: &str) -> PathBuf {
    let stem = match input.extension().and_then(|e| e.to_str()) {
        Some("json") => input.with_extension(""),
        _ => input.to_path_buf(),
    };
    let mut name = stem.into_os_string();
    name.push(format!(".{suffix}.json"));
    PathBuf::from(name)
}

fn cmd_rr(file: &Path) -> Result<ExitCode, Error> {
    let input: RrInputJson = parse_json(&read_text(file)?, file)?;
    let curve = curve_from_json(&input.curve)?;
    let divisor = Divisor::parse(&input.divisor, &curve)?;
    let basis = rr_basis(&divisor)?;

    println!("curve: {curve}");
    println!("divisor: {divisor}");
    println!("dimension: {}", basis.len());
    if !basis.is_empty() {
        println!("basis:");
        for u in &basis {
            println!("  {u}");
        }
    }

    let out = derived_path(file, "basis");
    let listing: Vec<apparent_loci::report::json::FuncElemJson> = basis
        .iter()
        .map(apparent_loci::report::json::FuncElemJson::from_elem)
        .collect();
    write_json(&out, &serde_json::json!({
        "curve": input.curve,
        "divisor": input.divisor,
        "dimension": basis.len(),
        "basis": listing,
    }))?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_trivialize(file: &Path, output: Option<PathBuf>) -> Result<ExitCode, Error> {
    let input: InstanceJson = parse_json(&read_text(file)?, file)?;
    let (frame, basepoint) = input.to_parts()?;

    let cert = trivialize(&frame, &basepoint)?;
    let report = verify_certificate(&frame, &cert)?;

    let mut json = CertificateJson::from_certificate(&cert);
    json.verification = Some(
        report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    );
    let out = output.unwrap_or_else(|| derived_path(file, "cert"));
    write_json(&out, &json)?;

    print!("{cert}");
    println!("{report}");
    println!("wrote {}", out.display());

    if report.pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Error::Verification("the certificate failed independent verification".into()))
    }
}

fn cmd_gauge(system_path: &Path, cert_path: &Path) -> Result<ExitCode, Error> {
    let system_json: SystemJson = parse_json(&read_text(system_path)?, system_path)?;
    let system = system_json.to_system()?;
    let cert_json: CertificateJson = parse_json(&read_text(cert_path)?, cert_path)?;
    let cert = cert_json.to_certificate()?;

    // Refuse to gauge through a certificate that does not verify. The
    // original frame is recovered from the certificate itself; the product
    // check is then vacuous, but the pole, locus, count, and recurrence
    // checks all audit recomputed facts against the certificate's claims.
    let original = cert.output_frame.mul(&cert.transform.inverse()?)?;
    let report = verify_certificate(&original, &cert)?;
    if !report.pass() {
        println!("{report}");
        return Err(Error::Verification(
            "the certificate failed independent verification".into(),
        ));
    }
    println!("certificate: accepted ({} checks)", report.checks.len());

    let (gauged, singular) = emit_system(&system, &cert)?;

    println!(
        "gauged a {0}x{0} system through the certificate transform", gauged.p()
    );
    println!("{singular}");

    let out = derived_path(system_path, "gauged");
    write_json(&out, &SystemJson::from_system(&gauged))?;
    println!("wrote {}", out.display());

    if singular.contained() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Error::Verification(
            "a singular point of the gauged system is unaccounted for".into(),
        ))
    }
}

fn cmd_fuzz(config_path: &Path) -> Result<ExitCode, Error> {
    let mut json: FuzzConfigJson = parse_json(&read_text(config_path)?, config_path)?;
    if let Ok(text) = std::env::var("APPARENT_LOCI_SEED") {
        json.seed = text.trim().parse().map_err(|e| Error::Parse {
            at: 0,
            msg: format!("APPARENT_LOCI_SEED {text:?}: {e}"),
        })?;
    }
    let config = FuzzConfig::from_json(&json)?;
    let summary = run_fuzz(&config);

    println!("seed: {}", config.seed);
    print!("{summary}");

    let out = derived_path(config_path, "summary");
    write_json(&out, &summary)?;
    println!("wrote {}", out.display());

    if summary.is_clean() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Error::Verification(format!(
            "{} fuzz instance(s) failed",
            summary.failures.len()
        )))
    }
}
