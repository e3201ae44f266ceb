mod common;

use common::example_path;
use instanton_core::cli::{run_command, Outcome, EXIT_MATH, EXIT_PASS, EXIT_USAGE};
use instanton_core::spec_file::parse_spec;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("instanton").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = run(&a);
    (out.code, serde_json::from_str(&out.stdout).expect("stdout is JSON"))
}

fn c6p3() -> String {
    example_path("c6p3").display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("instanton-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_passes_on_example() {
    let (code, v) = json(&["verify", &c6p3()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["results"]["rank_a"], 24);
    assert_eq!(v["results"]["a2_status"]["status"], "CertifiedFullRank");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["command"][0], "--json");
}

#[test]
fn jumping_line_reports_zero_determinant() {
    let out = run(&["splitting", &c6p3(), "--P", "1,0,0,0", "--Q", "0,0,0,1"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("Jumping"), "{}", out.stdout);
    let (_, v) = json(&["splitting", &c6p3(), "--P", "1,0,0,0", "--Q", "0,0,0,1"]);
    assert_eq!(v["results"]["split"]["verdict"], "Jumping");
    assert_eq!(v["results"]["split"]["determinant"], "0");
}

#[test]
fn negative_coordinates_parse() {
    let (code, v) = json(&["splitting", &c6p3(), "--P", "1,-2,3,4", "--Q", "5,6,-7,8"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["results"]["split"]["verdict"], "Trivial");
}

#[test]
fn dependent_points_are_rejected() {
    let out = run(&["splitting", &c6p3(), "--P", "1,2,3,4", "--Q", "2,4,6,8"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("error"));
}

#[test]
fn moduli_dim_values() {
    let (code, v) = json(&["moduli-dim", "--c", "6", "--n", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["results"]["dim"], 54);
    assert_eq!(run(&["moduli-dim", "--c", "2", "--n", "3"]).code, EXIT_USAGE);
}

#[test]
fn malformed_spec_exits_one_with_pointers() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"c": 2, "n": 3, "r": 4, "terms": [{"B": [[0, 1], [1, 0]], "C": [[0]]}], "extra": 1}"#).unwrap();
    let (code, v) = json(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    let pointers: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|x| x["pointer"].as_str().unwrap()).collect();
    assert!(pointers.contains(&"/extra"), "{pointers:?}");
    assert!(pointers.contains(&"/terms/0/B"), "{pointers:?}");
    assert!(pointers.contains(&"/terms/0/C"), "{pointers:?}");
    assert_eq!(run(&["verify", "/nonexistent/spec.json"]).code, EXIT_USAGE);
}

#[test]
fn rank_mismatch_exits_two() {
    let out = run(&["monad", &c6p3(), "--r", "10"]);
    assert_eq!(out.code, EXIT_MATH);
    assert!(out.stderr.contains("22"), "{}", out.stderr);
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["scan-lines", &c6p3(), "--P", "1,0,0,0"]).code, EXIT_USAGE);
    assert_eq!(run(&["cohomology", &c6p3(), "--kmin", "1", "--kmax", "0"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_PASS);
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    for args in [
        vec!["scan-lines", "SPEC", "--samples", "200", "--seed", "7"],
        vec!["kronecker", "SPEC", "--samples", "50"],
        vec!["cohomology", "SPEC", "--kmin", "-5", "--kmax", "1"],
    ] {
        let spec = c6p3();
        let args: Vec<&str> = args.iter().map(|a| if *a == "SPEC" { spec.as_str() } else { a }).collect();
        let a = run(&args).report.unwrap().without_timing().to_json();
        let b = run(&args).report.unwrap().without_timing().to_json();
        assert_eq!(a, b);
    }
}

#[test]
fn kronecker_and_cohomology_pass_on_example() {
    let (code, v) = json(&["kronecker", &c6p3(), "--samples", "50"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["results"]["rank_gamma_hat"], 24);
    let (code, v) = json(&["cohomology", &c6p3()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["results"]["entries"]["(0,0)"]["dim"], 0);
    assert_eq!(v["results"]["entries"]["(1,-1)"]["dim"], 6);
}

#[test]
fn generate_writes_a_verified_spec() {
    let path = scratch("gen.json");
    let out = run(&["generate", "--c", "3", "--n", "3", "--seed", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let spec = parse_spec(&path).unwrap();
    assert_eq!((spec.c, spec.n, spec.r), (3, 3, 6));
    assert_eq!(run(&["verify", path.to_str().unwrap()]).code, EXIT_PASS);
    assert_eq!(run(&["generate", "--c", "3", "--n", "3", "--mode", "pure"]).code, EXIT_USAGE);
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_instanton")).args(["moduli-dim", "--c", "6", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run(&["moduli-dim", "--c", "6", "--n", "3"]).stdout);
    let out = Command::new(env!("CARGO_BIN_EXE_instanton")).args(["monad", &c6p3(), "--r", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_MATH));
}
