//! End-to-end coverage of the command-line front end: file formats, exit
//! codes, report round-trips, and determinism.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;

use stabtop::abelian::{lattice_member, IntMatrix, Membership};

struct CliRun {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_cli(args: &[&str]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_stabtop"))
        .args(args)
        .output()
        .expect("binary runs");
    CliRun {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

/// Ring complex with 16 vertices plus field and cycle files.
struct RingFixture {
    _dir: tempfile::TempDir,
    complex: PathBuf,
    cycle: PathBuf,
    rotating: PathBuf,
    doubled: PathBuf,
    constant: PathBuf,
}

fn ring_fixture() -> RingFixture {
    let dir = tempfile::tempdir().unwrap();
    let n = 16;
    let mut edges = Vec::new();
    for i in 0..n - 1 {
        edges.push(format!("[{},{}]", i, i + 1));
    }
    edges.push(format!("[0,{}]", n - 1));
    let complex = write(
        dir.path(),
        "ring.yaml",
        &format!("vertices: {n}\nedges: [{}]\ntriangles: []\n", edges.join(",")),
    );

    let mut terms = Vec::new();
    for i in 0..n {
        terms.push(format!("[{},{},1]", i, (i + 1) % n));
    }
    let cycle = write(
        dir.path(),
        "loop.yaml",
        &format!("terms: [{}]\n", terms.join(",")),
    );

    let samples = |rate: f64| -> String {
        let pairs: Vec<String> = (0..n)
            .map(|i| {
                let t = rate * TAU * (i as f64) / (n as f64);
                format!("[{:.12},{:.12}]", t.cos(), t.sin())
            })
            .collect();
        format!("samples: [{}]\n", pairs.join(","))
    };
    let rotating = write(dir.path(), "rotating.yaml", &samples(1.0));
    let doubled = write(dir.path(), "doubled.yaml", &samples(2.0));
    let constant = write(dir.path(), "constant.yaml", &samples(0.0));

    RingFixture {
        _dir: dir,
        complex,
        cycle,
        rotating,
        doubled,
        constant,
    }
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn scenario_mobius_reports_the_obstruction_with_exit_code_two() {
    let run = run_cli(&["scenario", "mobius", "--format", "structured"]);
    assert_eq!(run.code, 2, "stderr: {}", run.stderr);
    let report: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report["outcome"], "obstruction-found");
    let rendered = run.stdout.as_str();
    assert!(rendered.contains("winding(X, core) = 2"));
    assert!(rendered.contains("winding(Y, core) = 0"));
    // the failed-inclusion witness e1 = (1, 0)
    assert!(rendered.contains("check = Fail, witness [1, 0]"));
}

#[test]
fn scenario_exit_codes_follow_the_verdicts() {
    assert_eq!(run_cli(&["scenario", "annulus-orbit"]).code, 0);
    assert_eq!(run_cli(&["scenario", "planar-sink"]).code, 2);
    let unknown = run_cli(&["scenario", "nope"]);
    assert_eq!(unknown.code, 1);
    assert!(unknown.stderr.contains("unknown scenario"));
}

#[test]
fn homology_of_the_circle_file() {
    let dir = tempfile::tempdir().unwrap();
    let complex = write(
        dir.path(),
        "circle.yaml",
        "vertices: 3\nedges: [[0,1],[0,2],[1,2]]\n",
    );
    let run = run_cli(&["homology", path(&complex)]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("H0 = Z, H1 = Z"), "{}", run.stdout);

    let single = run_cli(&["homology", path(&complex), "--degree", "1"]);
    assert!(single.stdout.contains("H1 = Z"));
    assert!(!single.stdout.contains("H0"));
}

#[test]
fn winding_command_matches_the_construction() {
    let fx = ring_fixture();
    let run = run_cli(&[
        "winding",
        path(&fx.complex),
        path(&fx.rotating),
        path(&fx.cycle),
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("winding = 1"), "{}", run.stdout);

    let run = run_cli(&[
        "winding",
        path(&fx.complex),
        path(&fx.doubled),
        path(&fx.cycle),
    ]);
    assert!(run.stdout.contains("winding = 2"), "{}", run.stdout);
}

#[test]
fn compare_distinct_exits_two_equal_exits_zero() {
    let fx = ring_fixture();
    let distinct = run_cli(&[
        "compare",
        path(&fx.complex),
        path(&fx.doubled),
        path(&fx.constant),
    ]);
    assert_eq!(distinct.code, 2);
    assert!(distinct.stdout.contains("outcome: Distinct"));
    assert!(distinct.stdout.contains("witness: [2, 0]"));

    let equal = run_cli(&[
        "compare",
        path(&fx.complex),
        path(&fx.rotating),
        path(&fx.rotating),
    ]);
    assert_eq!(equal.code, 0);
    assert!(equal.stdout.contains("outcome: Equal"));
    assert!(equal.stdout.contains("inconclusive"));
}

#[test]
fn check_pass_with_full_lattice_and_fail_with_skewed_line() {
    let fx = ring_fixture();
    let full = write(
        fx._dir.path(),
        "full.yaml",
        "columns: [[1, 0], [0, 1]]\n",
    );
    let pass = run_cli(&[
        "check",
        path(&fx.complex),
        path(&fx.constant),
        "--image",
        path(&full),
    ]);
    assert_eq!(pass.code, 0, "stderr: {}", pass.stderr);
    assert!(pass.stdout.contains("outcome: Pass"));

    let skewed = write(fx._dir.path(), "skew.yaml", "columns: [[1, 2]]\n");
    let fail = run_cli(&[
        "check",
        path(&fx.complex),
        path(&fx.constant),
        "--image",
        path(&skewed),
        "--format",
        "structured",
    ]);
    assert_eq!(fail.code, 2);
    let report: serde_json::Value = serde_json::from_str(&fail.stdout).unwrap();
    assert_eq!(report["outcome"], "Fail");

    // Round-trip: re-verify the emitted witness against the emitted
    // lattice with the exact integer engine.
    let witness: Vec<BigInt> = report["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().parse().unwrap())
        .collect();
    let columns: Vec<Vec<BigInt>> = report["lattice"]
        .as_array()
        .unwrap()
        .iter()
        .map(|col| {
            col.as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().unwrap().parse().unwrap())
                .collect()
        })
        .collect();
    let matrix = IntMatrix::from_columns(witness.len(), &columns).unwrap();
    match lattice_member(&witness, &matrix).unwrap() {
        Membership::NotMember { refutation } => {
            assert!(refutation.verify(&witness, &matrix));
        }
        other => panic!("report witness must stay refuted, got {other:?}"),
    }
}

#[test]
fn check_via_single_input_direction() {
    let fx = ring_fixture();
    // control direction turning twice; the constant stabilizer escapes it
    let fail = run_cli(&[
        "check",
        path(&fx.complex),
        path(&fx.constant),
        "--single-input",
        path(&fx.doubled),
    ]);
    assert_eq!(fail.code, 2, "stderr: {}", fail.stderr);
    assert!(fail.stdout.contains("witness: [1, 0]"), "{}", fail.stdout);
    assert!(fail.stdout.contains("image lattice columns: (1, 2)"));

    // a field always passes against its own single-input image
    let pass = run_cli(&[
        "check",
        path(&fx.complex),
        path(&fx.doubled),
        "--single-input",
        path(&fx.doubled),
    ]);
    assert_eq!(pass.code, 0);
}

#[test]
fn structured_reports_are_byte_identical_across_runs() {
    let fx = ring_fixture();
    let args = [
        "compare",
        path(&fx.complex),
        path(&fx.doubled),
        path(&fx.constant),
        "--format",
        "structured",
    ];
    let first = run_cli(&args);
    let second = run_cli(&args);
    assert_eq!(first.code, second.code);
    assert_eq!(first.stdout, second.stdout, "reports must be deterministic");
}

#[test]
fn tolerances_appear_in_every_report_header() {
    let fx = ring_fixture();
    let run = run_cli(&[
        "winding",
        path(&fx.complex),
        path(&fx.rotating),
        path(&fx.cycle),
        "--delta",
        "1e-5",
    ]);
    assert!(run
        .stdout
        .contains("tolerances: eps-zero-rel=1e-9 adequacy-delta=1e-5 winding-residual=1e-6"));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let fx = ring_fixture();
    let out = fx._dir.path().join("report.json");
    let run = run_cli(&[
        "scenario",
        "mobius",
        "--format",
        "structured",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());
    let content = std::fs::read_to_string(&out).unwrap();
    let report: serde_json::Value = serde_json::from_str(&content).unwrap();
    assert_eq!(report["outcome"], "obstruction-found");
}

#[test]
fn operational_errors_exit_one_with_context() {
    let fx = ring_fixture();
    let missing = run_cli(&["homology", "/nonexistent/path.yaml"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("cannot read"));

    let garbage = write(fx._dir.path(), "garbage.yaml", "vertices: [not a number\n");
    let bad = run_cli(&["homology", path(&garbage)]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("cannot parse"));

    let broken = write(
        fx._dir.path(),
        "broken.yaml",
        "vertices: 3\nedges: [[0,1],[0,2]]\ntriangles: [[0,1,2]]\n",
    );
    let invalid = run_cli(&["homology", path(&broken)]);
    assert_eq!(invalid.code, 1);
    assert!(invalid.stderr.contains("missing its edge"));

    // a chain that is not a cycle is rejected by the winding command
    let open_path = write(fx._dir.path(), "open.yaml", "terms: [[0, 1, 1]]\n");
    let not_cycle = run_cli(&[
        "winding",
        path(&fx.complex),
        path(&fx.rotating),
        path(&open_path),
    ]);
    assert_eq!(not_cycle.code, 1);
    assert!(not_cycle.stderr.contains("not a cycle"));

    let negative = run_cli(&["--eps-zero=-2", "scenario", "mobius"]);
    assert_eq!(negative.code, 1);
    assert!(negative.stderr.contains("tolerances must be positive"));
}

#[test]
fn zero_sample_field_fails_loudly_via_the_cli() {
    let fx = ring_fixture();
    let zeros = write(
        fx._dir.path(),
        "zero.yaml",
        &format!(
            "samples: [{}[0.0, 0.0]]\n",
            "[1.0, 0.0],".repeat(15)
        ),
    );
    let run = run_cli(&[
        "winding",
        path(&fx.complex),
        path(&zeros),
        path(&fx.cycle),
    ]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("nowhere zero"), "{}", run.stderr);
}
