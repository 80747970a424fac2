//! `finring`: batch front end over the finring library.
//!
//! Exit codes: 0 when every verdict was computed (a false verdict included),
//! 1 for a failed suite member or internal error, 2 for parse and usage
//! errors, 3 when a cap is exceeded, 4 when SNF is asked of a non-EDR ring.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finring::corpus::default_corpus;
use finring::properties::{fitting_ideals, snf, Matrix};
use finring::spectrum::{dot, spectrum_json};
use finring::suite::{check_property, run_suite, validate_properties, SUITES};
use finring::{Caps, Error, Ring, RingDescriptor};

#[derive(Parser)]
#[command(name = "finring", version, about = "Decision procedures for finite commutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest ring that may be enumerated.
    #[arg(long, global = true, default_value_t = Caps::default().elements, value_parser = positive)]
    cap_elements: usize,

    /// Largest ideal lattice that may be enumerated.
    #[arg(long, global = true, default_value_t = Caps::default().ideals, value_parser = positive)]
    cap_ideals: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate named properties of a ring.
    Check {
        ring: PathBuf,
        /// Comma-separated property names.
        #[arg(long, value_delimiter = ',', required = true)]
        properties: Vec<String>,
    },
    /// Prime spectrum, pSpec blocks with their pure ideals, and |B(R)|.
    Spec {
        ring: PathBuf,
        /// Also write the specialization poset as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Smith normal form `P·A·Q = D` with a verification transcript.
    Snf { ring: PathBuf, matrix: PathBuf },
    /// Run a named regression suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidDescriptor(_) | Error::InvalidArgument(_) | Error::TypeMismatch(_) => 2,
            Error::CapacityExceeded { .. } => 3,
            Error::NotEdr => 4,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_ring(path: &Path, caps: Caps) -> Result<Ring, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(RingDescriptor::from_json(&text)?.build_with(caps)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let caps = Caps {
        elements: cli.cap_elements,
        ideals: cli.cap_ideals,
        ..Caps::default()
    };
    match cli.command {
        Command::Check { ring, properties } => {
            validate_properties(&properties)?;
            let r = load_ring(&ring, caps)?;
            let reports = properties
                .iter()
                .map(|p| check_property(&r, p))
                .collect::<finring::Result<Vec<_>>>()?;
            match cli.format {
                Format::Text => {
                    for rep in &reports {
                        let evidence = rep.counterexample.as_ref().or(rep.witness.as_ref()).cloned().unwrap_or(Value::Null);
                        println!("{}: {} {}", rep.property, rep.holds, evidence);
                    }
                }
                _ => print_json(&json!({
                    "ring": r.name(),
                    "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                })),
            }
        }
        Command::Spec { ring, dot: dot_path } => {
            let r = load_ring(&ring, caps)?;
            let report = spectrum_json(&r)?;
            if let Some(path) = dot_path {
                fs::write(&path, dot(&r)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            match cli.format {
                Format::Dot => print!("{}", dot(&r)?),
                Format::Text => {
                    println!("ring: {}", r.name());
                    println!("primes: {}", report["spec"].as_array().map_or(0, Vec::len));
                    for (b, block) in report["pspec"].as_array().into_iter().flatten().enumerate() {
                        println!(
                            "block {b}: {} primes, A(x) = ({})",
                            block["primes"].as_array().map_or(0, Vec::len),
                            block["pure_ideal"].as_array().into_iter().flatten().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                        );
                    }
                    println!("boolean ring size: {}", report["boolean_ring_size"]);
                }
                Format::Json => print_json(&report),
            }
        }
        Command::Snf { ring, matrix } => {
            let r = load_ring(&ring, caps)?;
            let a = Matrix::from_json(&r, &read_json(&matrix)?)?;
            let s = snf(&r, &a)?;
            let pa = s.p.mul(&r, &a);
            let paq = pa.mul(&r, &s.q);
            let fitting: Vec<Value> = fitting_ideals(&r, &a)
                .iter()
                .map(|i| Value::Array(i.gens().iter().map(|g| r.literal(*g)).collect()))
                .collect();
            let diag: Vec<Value> = s.d.diagonal().iter().map(|d| r.literal(*d)).collect();
            let transcript = json!({
                "ring": r.name(),
                "A": a.to_json(&r),
                "P": s.p.to_json(&r),
                "Q": s.q.to_json(&r),
                "D": s.d.to_json(&r),
                "diagonal": diag,
                "PA": pa.to_json(&r),
                "PAQ": paq.to_json(&r),
                "PAQ_equals_D": paq == s.d,
                "det_P": r.literal(s.p.det(&r)),
                "det_Q": r.literal(s.q.det(&r)),
                "det_P_unit": r.is_unit(s.p.det(&r)),
                "det_Q_unit": r.is_unit(s.q.det(&r)),
                "fitting_ideal_generators": fitting,
            });
            match cli.format {
                Format::Text => {
                    println!("D = diag({})", transcript["diagonal"].as_array().into_iter().flatten().map(|v| v.to_string()).collect::<Vec<_>>().join(", "));
                    for key in ["A", "P", "Q", "PA", "PAQ", "D"] {
                        println!("{key} = {}", transcript[key]);
                    }
                    println!("P·A·Q = D: {}", transcript["PAQ_equals_D"]);
                    println!("det P = {} (unit: {})", transcript["det_P"], transcript["det_P_unit"]);
                    println!("det Q = {} (unit: {})", transcript["det_Q"], transcript["det_Q_unit"]);
                }
                _ => print_json(&transcript),
            }
        }
        Command::Suite { name, seed } => {
            if !SUITES.contains(&name.as_str()) {
                return Err(usage(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))));
            }
            let corpus = if name == "corpus" { default_corpus()? } else { Vec::new() };
            let outcomes = run_suite(&name, &corpus, seed)?;
            let all = outcomes.iter().all(|o| o.passed);
            match cli.format {
                Format::Text => {
                    for o in &outcomes {
                        println!("{} {}: {} ({} checked)", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail, o.checked);
                    }
                    println!("{}", if all { "PASS" } else { "FAIL" });
                }
                _ => print_json(&json!({
                    "suite": name,
                    "seed": seed,
                    "passed": all,
                    "members": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
                })),
            }
            if !all {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("finring: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
