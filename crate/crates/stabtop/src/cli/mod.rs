//! Command-line front end: loads complexes, fields, cycles, and lattices
//! from files, runs the homology/winding/compare/check engines or a
//! built-in scenario, and emits a text or structured report.
//!
//! Exit codes: 0 for success (including inconclusive Pass/Equal outcomes),
//! 2 when a certified obstruction was found (Distinct comparison, failed
//! inclusion, failed index test), 1 for input or precondition errors, so
//! shell pipelines can tell mathematical verdicts from operational
//! failures.

mod formats;
mod report;

pub use formats::{load_complex, load_cycle, load_field, load_lattice};
pub use report::{
    bigints_to_strings, strings_to_bigints, DigestBuilder, RefutationReport, Report,
    TolerancesReport,
};

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complex::{homology, ComplexError, DefectReport};
use crate::field::{single_input_image, FieldError, ProductClass, Tolerances};
use crate::scenarios::{Scenario, ScenarioError};
use crate::stabilize::{
    check_stabilizability, compare_vector_fields, CheckOutcome, CompareOutcome, StabilizeError,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid complex in {path}: {report}")]
    InvalidComplex { path: PathBuf, report: DefectReport },
    #[error("cycle references edge ({from},{to}) which is not in the complex")]
    UnknownEdge { from: usize, to: usize },
    #[error("tolerances must be positive and finite: {0}")]
    BadTolerances(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Stabilize(#[from] StabilizeError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// Human-readable text.
    Text,
    /// Deterministic JSON.
    Structured,
}

/// Parsed invocation: subcommand, inputs, tolerance overrides, output.
#[derive(Debug, Parser)]
#[command(
    name = "stabtop",
    version,
    about = "Homology-based obstruction tests for feedback stabilizability",
    after_help = "Exit codes: 0 success or inconclusive, 2 certified obstruction, 1 error."
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Zero threshold relative to the largest sample norm.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps_zero: f64,

    /// Sampling adequacy margin in radians.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub delta: f64,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology groups of a complex file.
    Homology {
        complex: PathBuf,
        /// Restrict to one degree (0, 1, or 2); all three by default.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Winding number of a field along a cycle.
    Winding {
        complex: PathBuf,
        field: PathBuf,
        cycle: PathBuf,
    },
    /// Compare the induced homology data of two fields.
    Compare {
        complex: PathBuf,
        field_x: PathBuf,
        field_y: PathBuf,
    },
    /// Test a declared stabilizer against a control image lattice.
    Check {
        complex: PathBuf,
        /// The field for which the set is asymptotically stable.
        stabilizer: PathBuf,
        /// Image lattice file (generator columns).
        #[arg(
            long,
            value_name = "LATTICE_FILE",
            conflicts_with = "single_input",
            required_unless_present = "single_input"
        )]
        image: Option<PathBuf>,
        /// Derive the image lattice from a single-input control direction.
        #[arg(long, value_name = "FIELD_FILE")]
        single_input: Option<PathBuf>,
    },
    /// Run a built-in scenario: mobius, annulus-orbit, planar-sink.
    Scenario { name: String },
}

/// A finished run: the report plus the exit status it implies.
#[derive(Debug)]
pub struct RunOutput {
    pub report: Report,
    pub exit_code: i32,
}

fn tolerances_from(config: &RunConfig) -> Result<Tolerances, CliError> {
    let t = Tolerances {
        eps_zero_rel: config.eps_zero,
        adequacy_delta: config.delta,
        ..Tolerances::default()
    };
    if !(t.eps_zero_rel > 0.0 && t.eps_zero_rel.is_finite()) {
        return Err(CliError::BadTolerances(format!(
            "eps-zero = {}",
            t.eps_zero_rel
        )));
    }
    if !(t.adequacy_delta > 0.0 && t.adequacy_delta.is_finite()) {
        return Err(CliError::BadTolerances(format!("delta = {}", t.adequacy_delta)));
    }
    Ok(t)
}

fn class_json(class: &ProductClass) -> serde_json::Value {
    json!({
        "base": bigints_to_strings(&class.base),
        "fiber": class.fiber.to_string(),
    })
}

/// Executes one parsed invocation. Engine outcomes are reported verbatim;
/// nothing here re-derives or post-processes verdict data.
pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let tolerances = tolerances_from(config)?;
    let tolerances_report: TolerancesReport = tolerances.into();

    match &config.command {
        Command::Homology { complex, degree } => {
            let (k, bytes) = load_complex(complex)?;
            let mut digest = DigestBuilder::new();
            digest.add("command", b"homology");
            digest.add("complex", &bytes);
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![*d],
                None => vec![0, 1, 2],
            };
            let mut parts = Vec::new();
            let mut detail_rows = Vec::new();
            for &d in &degrees {
                let h = homology(&k, d)?;
                parts.push(format!("H{d} = {}", h.isomorphism_type()));
                detail_rows.push(json!({
                    "degree": d,
                    "isomorphism_type": h.isomorphism_type(),
                    "free_rank": h.free_rank(),
                    "torsion": bigints_to_strings(h.torsion()),
                    "generators": h.generators().iter().map(|g| g.chain().to_string()).collect::<Vec<_>>(),
                }));
            }
            Ok(RunOutput {
                report: Report {
                    command: "homology".to_string(),
                    theorem: None,
                    outcome: parts.join(", "),
                    witness: None,
                    coefficients: None,
                    lattice: None,
                    refutation: None,
                    tolerances: tolerances_report,
                    inputs_digest: digest.finish(),
                    interpretation: None,
                    details: Some(json!({ "groups": detail_rows })),
                },
                exit_code: 0,
            })
        }

        Command::Winding {
            complex,
            field,
            cycle,
        } => {
            let (k, kb) = load_complex(complex)?;
            let (f, fb) = load_field(field, &k, tolerances)?;
            let (c, cb) = load_cycle(cycle, &k)?;
            let mut digest = DigestBuilder::new();
            digest.add("command", b"winding");
            digest.add("complex", &kb);
            digest.add("field", &fb);
            digest.add("cycle", &cb);
            let w = f.winding_number(&c)?;
            Ok(RunOutput {
                report: Report {
                    command: "winding".to_string(),
                    theorem: None,
                    outcome: format!("winding = {w}"),
                    witness: None,
                    coefficients: None,
                    lattice: None,
                    refutation: None,
                    tolerances: tolerances_report,
                    inputs_digest: digest.finish(),
                    interpretation: None,
                    details: Some(json!({ "winding": w })),
                },
                exit_code: 0,
            })
        }

        Command::Compare {
            complex,
            field_x,
            field_y,
        } => {
            let (k, kb) = load_complex(complex)?;
            let (fx, xb) = load_field(field_x, &k, tolerances)?;
            let (fy, yb) = load_field(field_y, &k, tolerances)?;
            let mut digest = DigestBuilder::new();
            digest.add("command", b"compare");
            digest.add("complex", &kb);
            digest.add("field-x", &xb);
            digest.add("field-y", &yb);
            let h = homology(&k, 1)?;
            let verdict = compare_vector_fields(&fx, &fy, &h)?;
            let (outcome, witness, exit_code, details) = match verdict.outcome {
                CompareOutcome::Equal => (
                    "Equal".to_string(),
                    None,
                    0,
                    json!({
                        "degrees_checked": verdict.degrees_checked,
                        "component_markers": verdict.component_markers,
                    }),
                ),
                CompareOutcome::Distinct {
                    witness_generator,
                    winding_x,
                    winding_y,
                } => (
                    "Distinct".to_string(),
                    Some(vec![winding_x.to_string(), winding_y.to_string()]),
                    2,
                    json!({
                        "degrees_checked": verdict.degrees_checked,
                        "component_markers": verdict.component_markers,
                        "witness_generator": witness_generator,
                        "windings": [winding_x, winding_y],
                    }),
                ),
            };
            Ok(RunOutput {
                report: Report {
                    command: "compare".to_string(),
                    theorem: Some(verdict.test.to_string()),
                    outcome,
                    witness,
                    coefficients: None,
                    lattice: None,
                    refutation: None,
                    tolerances: tolerances_report,
                    inputs_digest: digest.finish(),
                    interpretation: Some(verdict.interpretation),
                    details: Some(details),
                },
                exit_code,
            })
        }

        Command::Check {
            complex,
            stabilizer,
            image,
            single_input,
        } => {
            let (k, kb) = load_complex(complex)?;
            let (fy, yb) = load_field(stabilizer, &k, tolerances)?;
            let mut digest = DigestBuilder::new();
            digest.add("command", b"check");
            digest.add("complex", &kb);
            digest.add("stabilizer", &yb);
            let h = homology(&k, 1)?;
            let lattice = match (image, single_input) {
                (Some(path), None) => {
                    let (lattice, lb) = load_lattice(path, h.free_rank())?;
                    digest.add("image-lattice", &lb);
                    lattice
                }
                (None, Some(path)) => {
                    let (g, gb) = load_field(path, &k, tolerances)?;
                    digest.add("single-input-direction", &gb);
                    single_input_image(&g, &h)?
                }
                // clap enforces exactly one source; unreachable via the CLI
                _ => {
                    return Err(CliError::BadTolerances(
                        "exactly one of --image and --single-input is required".to_string(),
                    ))
                }
            };
            let verdict = check_stabilizability(&fy, &lattice, &h)?;
            let lattice_columns: Vec<Vec<String>> = verdict
                .image
                .columns()
                .iter()
                .map(|c| bigints_to_strings(c))
                .collect();
            let classes: Vec<serde_json::Value> =
                verdict.stabilizer_classes.iter().map(class_json).collect();
            let (outcome, witness, coefficients, refutation, exit_code) = match &verdict.outcome {
                CheckOutcome::Pass { coefficients } => (
                    "Pass".to_string(),
                    None,
                    Some(
                        coefficients
                            .iter()
                            .map(|c| bigints_to_strings(c))
                            .collect::<Vec<_>>(),
                    ),
                    None,
                    0,
                ),
                CheckOutcome::Fail {
                    witness,
                    refutation,
                } => (
                    "Fail".to_string(),
                    Some(bigints_to_strings(&witness.to_vector())),
                    None,
                    Some(RefutationReport::from(refutation)),
                    2,
                ),
            };
            Ok(RunOutput {
                report: Report {
                    command: "check".to_string(),
                    theorem: Some(verdict.test.to_string()),
                    outcome,
                    witness,
                    coefficients,
                    lattice: Some(lattice_columns),
                    refutation,
                    tolerances: tolerances_report,
                    inputs_digest: digest.finish(),
                    interpretation: Some(verdict.interpretation.clone()),
                    details: Some(json!({ "stabilizer_classes": classes })),
                },
                exit_code,
            })
        }

        Command::Scenario { name } => {
            let scenario = Scenario::by_name(name)?;
            let run = scenario.run()?;
            let mut digest = DigestBuilder::new();
            digest.add("command", b"scenario");
            digest.add("scenario", name.as_bytes());
            let (outcome, exit_code) = if !run.all_matched {
                ("golden-mismatch".to_string(), 1)
            } else if run.any_obstruction {
                ("obstruction-found".to_string(), 2)
            } else {
                ("clean".to_string(), 0)
            };
            Ok(RunOutput {
                report: Report {
                    command: format!("scenario {name}"),
                    theorem: None,
                    outcome,
                    witness: None,
                    coefficients: None,
                    lattice: None,
                    refutation: None,
                    tolerances: tolerances_report,
                    inputs_digest: digest.finish(),
                    interpretation: Some(scenario.frame_description.clone()),
                    details: Some(serde_json::to_value(&run).expect("scenario run serializes")),
                },
                exit_code,
            })
        }
    }
}

/// Full CLI entry point: parse, run, emit, map errors to exit code 1.
pub fn main_entry() -> i32 {
    let config = RunConfig::parse();
    match run(&config) {
        Ok(output) => {
            let rendered = match config.format {
                ReportFormat::Text => output.report.to_text(),
                ReportFormat::Structured => {
                    let mut s = output.report.to_json();
                    s.push('\n');
                    s
                }
            };
            if let Some(path) = &config.output {
                if let Err(source) = std::fs::write(path, rendered) {
                    eprintln!(
                        "error: {}",
                        CliError::Output {
                            path: path.clone(),
                            source
                        }
                    );
                    return 1;
                }
            } else {
                print!("{rendered}");
            }
            output.exit_code
        }
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}
