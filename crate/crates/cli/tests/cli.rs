//! End-to-end tests of the job pipeline: parsing, dispatch, determinism, and
//! exit codes of the installed binary.

use std::io::Write;
use std::process::Command;

use homolog::{canonical_jobspec, parse_jobspec, run, run_text, RunOptions};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homolog"))
}

fn write_job(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write job");
    f
}

const MINIMAL: &str = r#"{
  "schema": 1,
  "ring": "Z",
  "command": "cohomology",
  "objects": { "M": { "terms": [ { "degree": 0, "generators": 1 } ] } },
  "params": { "object": "M" }
}"#;

#[test]
fn minimal_job_parses_and_runs() {
    let report = run_text(MINIMAL, "cohomology", &RunOptions::default()).unwrap();
    assert_eq!(report.result["cohomology"][0]["module"], "Z");
}

#[test]
fn declared_command_must_match() {
    let err = run_text(MINIMAL, "ext", &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn unknown_ring_is_rejected() {
    let text = MINIMAL.replace("\"Z\"", "\"F2\"");
    let err = parse_jobspec(&text).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(format!("{err}").contains("ring"));
}

#[test]
fn square_differential_is_rejected_with_degree() {
    let text = r#"{
      "schema": 1, "ring": "Z",
      "objects": { "X": { "terms": [
          {"degree":0,"generators":1}, {"degree":1,"generators":1}, {"degree":2,"generators":1} ],
        "differentials": [ {"degree":0,"matrix":[["1"]]}, {"degree":1,"matrix":[["1"]]} ] } },
      "params": { "object": "X" }
    }"#;
    let err = run_text(text, "cohomology", &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let msg = format!("{err}");
    assert!(msg.contains("d∘d ≠ 0 at degree 0"), "{msg}");
}

#[test]
fn polynomial_entries_parse() {
    let text = r#"{
      "schema": 1, "ring": "Qt",
      "objects": { "X": { "terms": [ {"degree":0,"generators":1}, {"degree":1,"generators":1} ],
        "differentials": [ {"degree":0,"matrix":[["t^2+1"]]} ] } },
      "params": { "object": "X", "degree": 1 }
    }"#;
    let report = run_text(text, "cohomology", &RunOptions::default()).unwrap();
    assert_eq!(report.result["cohomology"][0]["module"], "Qt/(t^2 + 1)");
}

#[test]
fn canonical_serialization_is_idempotent() {
    let messy = r#"{
      "schema": 1, "ring": "Qt",
      "objects": { "X": { "terms": [ {"degree":1,"generators":1}, {"degree":0,"generators":1} ],
        "differentials": [ {"degree":0,"matrix":[[ "0*t + t^2+1" ]]} ] } },
      "params": { "object": "X" }
    }"#;
    let job = parse_jobspec(messy).unwrap();
    let once = canonical_jobspec(&job).unwrap();
    let twice = canonical_jobspec(&parse_jobspec(&once).unwrap()).unwrap();
    assert_eq!(once, twice);
    assert!(once.contains("t^2 + 1"));
}

#[test]
fn reports_are_byte_deterministic() {
    let job = parse_jobspec(MINIMAL).unwrap();
    let a = run(&job, "cohomology", &RunOptions::default()).unwrap();
    let b = run(&job, "cohomology", &RunOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_pretty(), b.to_pretty());

    let ax = r#"{ "schema": 1, "ring": "Z", "params": { "seed": 9, "trials": 5 } }"#;
    let job = parse_jobspec(ax).unwrap();
    let a = run(&job, "axioms-check", &RunOptions::default()).unwrap();
    let b = run(&job, "axioms-check", &RunOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn binary_exit_codes() {
    // success
    let f = write_job(MINIMAL);
    let out = bin()
        .args(["cohomology", "--input"])
        .arg(f.path())
        .output()
        .expect("run binary");
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("H^0 = Z"));

    // malformed input: exit 2
    let f = write_job("{ not json");
    let out = bin()
        .args(["cohomology", "--input"])
        .arg(f.path())
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(2));

    // domain rejection: dualizing against torsion, exit 1
    let f = write_job(
        r#"{
      "schema": 1, "ring": "Z",
      "objects": {
        "M": { "terms": [ { "degree": 0, "generators": 1 } ] },
        "R": { "terms": [ { "degree": 0, "generators": 1, "relations": [["2"]] } ] } },
      "params": { "object": "M", "dualizer": "R" }
    }"#,
    );
    let out = bin()
        .args(["dualize", "--input"])
        .arg(f.path())
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a dualizing complex"));

    // entry cap: exit 4
    let f = write_job(
        r#"{
      "schema": 1, "ring": "Z",
      "objects": { "M": { "terms": [ { "degree": 0, "generators": 1,
        "relations": [["123456789123456789123456789"]] } ] } },
      "params": { "object": "M" }
    }"#,
    );
    let out = bin()
        .args(["cohomology", "--input"])
        .arg(f.path())
        .env("HOMOLOG_MAX_ENTRY_BITS", "16")
        .output()
        .expect("run binary");
    assert_eq!(out.status.code(), Some(4));

    // byte-identical stdout across runs with a fixed seed
    let f = write_job(r#"{ "schema": 1, "ring": "Z", "params": { "trials": 5 } }"#);
    let run_once = || {
        bin()
            .args(["axioms-check", "--seed", "11", "--json", "--input"])
            .arg(f.path())
            .output()
            .expect("run binary")
    };
    let a = run_once();
    let b = run_once();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn witness_flag_attaches_homotopies() {
    let text = r#"{
      "schema": 1, "ring": "Z",
      "objects": { "P": { "terms": [ {"degree":-1,"generators":1}, {"degree":0,"generators":1} ],
        "differentials": [ {"degree":-1,"matrix":[["2"]]} ] } },
      "maps": {
        "double": { "source": "P", "target": "P",
          "components": [ {"degree":-1,"matrix":[["2"]]}, {"degree":0,"matrix":[["2"]]} ] },
        "zero": { "source": "P", "target": "P", "components": [] },
        "one": { "source": "P", "target": "P",
          "components": [ {"degree":-1,"matrix":[["1"]]}, {"degree":0,"matrix":[["1"]]} ] }
      },
      "params": {
        "first":  { "denominator": "one", "numerator": "double" },
        "second": { "denominator": "one", "numerator": "zero" }
      }
    }"#;
    let opts = RunOptions {
        witness: true,
        seed: None,
    };
    // P resolves Z/2, where doubling is homotopic to zero
    let report = run_text(text, "roof-eq", &opts).unwrap();
    assert_eq!(report.result["equal"], true);
    assert!(report.result["homotopy"].is_array());
}

#[test]
fn desk_scale_limits_are_enforced() {
    let wide = r#"{
      "schema": 1, "ring": "Z",
      "objects": { "X": { "terms": [
        {"degree": 0, "generators": 1}, {"degree": 1000000000000, "generators": 1} ] } },
      "params": { "object": "X" }
    }"#;
    let err = run_text(wide, "cohomology", &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);

    let fat = r#"{
      "schema": 1, "ring": "Z",
      "objects": { "X": { "terms": [ {"degree": 0, "generators": 100000} ] } },
      "params": { "object": "X" }
    }"#;
    let err = run_text(fat, "cohomology", &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);

    let spread = r#"{
      "schema": 1, "ring": "Z",
      "objects": { "X": { "terms": [
        {"degree": 0, "generators": 1}, {"degree": 600, "generators": 1} ] } },
      "params": { "object": "X" }
    }"#;
    let err = run_text(spread, "cohomology", &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
