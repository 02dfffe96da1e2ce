//! Command-line front end: Kauffman polynomials of PD codes, classical
//! invariants of Legendrian fronts, and the Thurston–Bennequin bound
//! tb ≤ −max_deg_x K.
//!
//! Exit codes: 0 success, 1 bound violation, 2 parse error, 3 validation
//! error, 4 output I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dubrovnik_cli::fixtures;
use dubrovnik_core::{
    check_front, kauffman_unreduced, random_front, BoundReport, Diagram, DiagramError, FrontError,
    FrontWord, Laurent2Poly,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_IO: u8 = 4;

/// Random fronts generated by `--fuzz` stay within this many events.
const FUZZ_EVENT_CAP: usize = 14;

#[derive(Parser)]
#[command(name = "dubrovnik", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the unreduced Kauffman polynomial of a PD code or front file.
    Kauffman {
        /// Input file: a PD code (`X[a,b,c,d]`/`O[n]` entries) or a front
        /// word (`.front` files, or anything that fails to scan as PD).
        file: PathBuf,
    },
    /// Print the Thurston–Bennequin number of a front file.
    Tb { file: PathBuf },
    /// Print the rotation number of a front file.
    Rot { file: PathBuf },
    /// Check tb ≤ −max_deg_x K for a front file and report the slack.
    Check {
        file: PathBuf,
        /// Also check every component against its own polynomial.
        #[arg(long)]
        per_component: bool,
        /// Additionally check N seeded random fronts; exit 1 on any violation.
        #[arg(long, value_name = "N")]
        fuzz: Option<u64>,
        /// Seed for --fuzz.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report as a JSON document to this path ("-" for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Print the PD code of a front's resolved diagram.
    Resolve { file: PathBuf },
    /// Write an SVG drawing of a front.
    Render {
        file: PathBuf,
        /// Output path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Inspect the built-in fixture corpus.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Print every fixture's name, kind, and source path.
    List,
    /// Recompute every fixture's expected values; exit 3 on any mismatch.
    Verify,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when a pipe consumer stops reading, e.g.
    // `dubrovnik fixtures list | head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Kauffman { file } => {
            let polynomial = load_polynomial(&file)?;
            println!("{polynomial}");
            Ok(())
        }
        Command::Tb { file } => {
            println!("{}", load_front(&file)?.thurston_bennequin());
            Ok(())
        }
        Command::Rot { file } => {
            println!("{}", load_front(&file)?.rotation());
            Ok(())
        }
        Command::Check {
            file,
            per_component,
            fuzz,
            seed,
            json,
        } => cmd_check(&file, per_component, fuzz, seed, json.as_deref()),
        Command::Resolve { file } => {
            println!("{}", load_front(&file)?.resolve_to_diagram());
            Ok(())
        }
        Command::Render { file, out } => {
            let svg = load_front(&file)?.render_svg();
            fs::write(&out, svg)
                .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", out.display())))
        }
        Command::Fixtures { action } => cmd_fixtures(action),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn front_failure(path: &Path, error: FrontError) -> Failure {
    let code = match error {
        FrontError::Syntax { .. } => EXIT_PARSE,
        _ => EXIT_VALIDATION,
    };
    Failure::new(code, format!("{}: {error}", path.display()))
}

fn diagram_failure(path: &Path, error: DiagramError) -> Failure {
    let code = match error {
        DiagramError::Syntax { .. } => EXIT_PARSE,
        _ => EXIT_VALIDATION,
    };
    Failure::new(code, format!("{}: {error}", path.display()))
}

fn load_front(path: &Path) -> Result<FrontWord, Failure> {
    read_input(path)?
        .parse()
        .map_err(|e| front_failure(path, e))
}

/// Reads a PD code or a front word, whichever the file holds, and returns
/// the unreduced Kauffman polynomial (of the resolved diagram, for fronts).
fn load_polynomial(path: &Path) -> Result<Laurent2Poly, Failure> {
    let text = read_input(path)?;
    if path.extension().is_some_and(|e| e == "front") {
        let front: FrontWord = text.parse().map_err(|e| front_failure(path, e))?;
        return Ok(kauffman_unreduced(&front.resolve_to_diagram()));
    }
    match text.parse::<Diagram>() {
        Ok(diagram) => Ok(kauffman_unreduced(&diagram)),
        // Not PD-shaped at all: accept a front word instead.
        Err(DiagramError::Syntax { .. }) => match text.parse::<FrontWord>() {
            Ok(front) => Ok(kauffman_unreduced(&front.resolve_to_diagram())),
            Err(FrontError::Syntax { .. }) => Err(Failure::new(
                EXIT_PARSE,
                format!("{}: neither a PD code nor a front word", path.display()),
            )),
            Err(e) => Err(front_failure(path, e)),
        },
        Err(e) => Err(diagram_failure(path, e)),
    }
}

fn report_json(report: &BoundReport) -> serde_json::Value {
    json!({
        "name": report.name,
        "components": report.components,
        "tb": report.tb,
        "rotation": report.rotation,
        "component_tb": report.component_tb,
        "component_rotation": report.component_rotation,
        "kauffman": report.kauffman.to_string(),
        "bound": report.bound,
        "slack": report.slack,
        "satisfied": report.satisfied,
    })
}

fn cmd_check(
    path: &Path,
    per_component: bool,
    fuzz: Option<u64>,
    seed: u64,
    json_out: Option<&Path>,
) -> Result<(), Failure> {
    let front = load_front(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let report = check_front(&name, &front);
    println!("{report}");
    let mut document = report_json(&report);
    let mut violations: Vec<String> = Vec::new();
    if !report.satisfied {
        violations.push(format!(
            "{name}: tb {} exceeds bound {}",
            report.tb, report.bound
        ));
    }

    if per_component {
        let mut sub_docs = Vec::new();
        for comp in 0..front.component_count() {
            let sub = front.component_front(comp);
            let sub_report = check_front(&format!("{name}/c{}", comp + 1), &sub);
            println!();
            println!("{sub_report}");
            if !sub_report.satisfied {
                violations.push(format!(
                    "{}: tb {} exceeds bound {}",
                    sub_report.name, sub_report.tb, sub_report.bound
                ));
            }
            sub_docs.push(report_json(&sub_report));
        }
        document["per_component"] = serde_json::Value::Array(sub_docs);
    }

    if let Some(count) = fuzz {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failed = 0u64;
        for index in 0..count {
            let sample = random_front(&mut rng, FUZZ_EVENT_CAP);
            let sample_report = check_front(&format!("fuzz-{index}"), &sample);
            if !sample_report.satisfied {
                failed += 1;
                violations.push(format!(
                    "fuzz front {index} ({sample}): tb {} exceeds bound {}",
                    sample_report.tb, sample_report.bound
                ));
            }
        }
        println!();
        println!("fuzz: {count} fronts, seed {seed}, {failed} violations");
        document["fuzz"] = json!({ "count": count, "seed": seed, "violations": failed });
    }

    if let Some(json_path) = json_out {
        let text = format!("{document:#}\n");
        if json_path == Path::new("-") {
            print!("{text}");
        } else {
            fs::write(json_path, text)
                .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", json_path.display())))?;
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_VIOLATION, violations.join("\n")))
    }
}

fn cmd_fixtures(action: FixturesAction) -> Result<(), Failure> {
    match action {
        FixturesAction::List => {
            for fixture in fixtures::ALL {
                println!(
                    "{:<26} {:<5} {}",
                    fixture.name,
                    fixture.kind.label(),
                    fixture.path
                );
            }
            Ok(())
        }
        FixturesAction::Verify => {
            let mut failures = 0usize;
            for fixture in fixtures::ALL {
                match fixtures::verify(fixture) {
                    Ok(()) => println!("ok {}", fixture.name),
                    Err(why) => {
                        failures += 1;
                        println!("FAIL {}: {why}", fixture.name);
                    }
                }
            }
            if failures == 0 {
                println!("verified {} fixtures", fixtures::ALL.len());
                Ok(())
            } else {
                Err(Failure::new(
                    EXIT_VALIDATION,
                    format!("{failures} fixture(s) failed verification"),
                ))
            }
        }
    }
}
