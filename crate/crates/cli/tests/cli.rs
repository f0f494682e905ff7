use std::path::PathBuf;
use std::process::Command;

use gabinv::{run, CommandResult, ErrorKind, Status};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn corpus() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data/trivial_class_group.json")
        .to_string_lossy()
        .into_owned()
}

fn gabinv(args: &[&str]) -> CommandResult {
    run(std::iter::once("gabinv").chain(args.iter().copied()))
}

fn validator(command: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{command}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Validates against the command's schema, checks the round trip and
/// determinism, and returns the outputs.
fn checked(args: &[&str]) -> (CommandResult, Value) {
    let r = gabinv(args);
    let doc: Value = serde_json::from_str(&r.to_json()).unwrap();
    let v = validator(&r.command);
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}\n{}", r.to_json());
    let back: CommandResult = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(gabinv(args).to_json(), r.to_json(), "{args:?} is not deterministic");
    let out = r.outputs.clone();
    (r, out)
}

fn ok(args: &[&str]) -> Value {
    let (r, out) = checked(args);
    assert_eq!(r.status, Status::Ok, "{args:?}: {}", r.to_json());
    out
}

fn failed(args: &[&str], kind: ErrorKind) -> String {
    let r = gabinv(args);
    match r.status {
        Status::Error { kind: k, message } => {
            assert_eq!(k, kind, "{args:?}: {message}");
            message
        }
        Status::Ok => panic!("{args:?} unexpectedly succeeded"),
    }
}

#[test]
fn exceptional_for_two() {
    let out = ok(&["exceptional", "--q", "2", "--l-max", "3000"]);
    assert_eq!(out["primes"], serde_json::json!([1093]));
    let out = ok(&["exceptional", "--q", "7", "--l-max", "10"]);
    assert!(out["primes"].as_array().unwrap().contains(&5.into()));
    let out = ok(&["exceptional", "--q", "3", "--l-max", "10"]);
    assert_eq!(out["two_anomalous"], true);
}

#[test]
fn tq_profile_rows() {
    let out = ok(&["tq-profile", "--q", "9", "--l-max", "7"]);
    let rows = out["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["l"], 2);
    assert_eq!(rows[0]["threshold"], 3);
    assert_eq!(rows[0]["s_l"], 3);
    assert_eq!(rows[1]["threshold"], Value::Null); // l = p
    let out = ok(&["tq-profile", "--q", "3", "--l-max", "2"]);
    assert_eq!(out["rows"][0]["extra_m1"], true);
    assert_eq!(out["rows"][0]["s_l"], 1);
}

#[test]
fn dk_both_literal_forms() {
    let a = ok(&["dk", "--q", "64"]);
    let b = ok(&["dk", "--q", "2^6"]);
    assert_eq!(a, b);
    assert_eq!(a["d"], 3);
    assert_eq!(ok(&["dk", "--q", "7"])["p_star"], -7);
}

#[test]
fn compare_tq_cases() {
    assert_eq!(ok(&["compare-tq", "--q1", "2", "--q2", "2"])["isomorphic"], true);
    // d = 1 for both
    assert_eq!(ok(&["compare-tq", "--q1", "2", "--q2", "16"])["isomorphic"], true);
    let out = ok(&["compare-tq", "--q1", "2", "--q2", "8"]);
    assert_eq!(out["isomorphic"], false);
    assert_eq!(out["first_differing_prime"], 3);
    let out = ok(&["compare-tq", "--q1", "2", "--q2", "3"]);
    assert_eq!(out["first_differing_prime"], 2);
}

#[test]
fn compare_gab_conditions() {
    let out = ok(&["compare-gab", "--q1", "2", "--cl1", "3", "--q2", "16", "--cl2", "3,2"]);
    // the 2-part is discarded in characteristic 2
    assert_eq!(out["isomorphic"], true);
    let out = ok(&["compare-gab", "--q1", "2", "--cl1", "", "--q2", "8", "--cl2", "1"]);
    assert_eq!(out["conditions"]["same_d"], false);
    assert_eq!(out["conditions"]["same_cl_non_p"], true);
    assert_eq!(out["isomorphic"], false);
}

#[test]
fn reconstruct_round_trip() {
    let out = ok(&["reconstruct", "--q", "3^10", "--cl", "2,4,5"]);
    assert_eq!(out["p"], 3);
    assert_eq!(out["d_recovered"], 10);
    assert_eq!(out["consistent"], true);
    assert_eq!(out["cl_non_p"]["literal"], "2,4,5");
}

#[test]
fn zeta_reports() {
    let out = ok(&["zeta", "--curve", &data("elliptic_f2.json"), "--check-extra"]);
    assert_eq!(out["class_number"], 1);
    assert_eq!(out["l_polynomial"], serde_json::json!([1, -2, 2]));
    assert_eq!(out["extra"]["ok"], true);
    assert_eq!(out["extra"]["counted"], 5);
    let out = ok(&["zeta", "--curve", &data("genus2_f3.json")]);
    assert_eq!(out["extra"], Value::Null);
    assert_eq!(out["weil_bound"], true);
    assert_eq!(out["functional_equation"], true);
}

#[test]
fn corpus_verify_passes_and_fails() {
    let out = ok(&["corpus-verify", "--file", &corpus()]);
    assert_eq!(out["all_pass"], true);
    assert_eq!(out["entries"].as_array().unwrap().len(), 8);
    let (r, out) = checked(&["corpus-verify", "--file", &data("bad_corpus.json")]);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(out["all_pass"], false);
}

#[test]
fn waterhouse_small_fields() {
    for q in ["2", "4", "9"] {
        let out = ok(&["waterhouse", "--q", q]);
        assert_eq!(out["points"], out["field"]["q"]);
        assert_eq!(out["class_number"], out["field"]["q"]);
    }
    let msg = failed(&["waterhouse", "--q", "128"], ErrorKind::Domain);
    assert!(msg.contains("64"), "{msg}");
}

#[test]
fn two_rank_family_report() {
    let out = ok(&["two-rank-family", "--q", "3", "--m", "2"]);
    assert_eq!(out["degrees"], serde_json::json!([3, 4]));
    assert_eq!(out["genus"], 3);
    assert_eq!(out["check"], true);
    failed(&["two-rank-family", "--q", "2", "--m", "2"], ErrorKind::Domain);
}

#[test]
fn extension_reports() {
    let out = ok(&["extension", "--l", "2", "--A", "2", "--orders", "2,4,8,16", "--reorder", "5"]);
    assert_eq!(out["B"]["literal"], "2,4,8,32");
    assert_eq!(out["uniqueness"]["isomorphic"], true);
    assert_eq!(out["totally_non_split"]["dual"], Value::Null);
    let out = ok(&["extension", "--l", "2", "--A", "2", "--orders", "2,4"]);
    assert_eq!(out["totally_non_split"]["dual"], true);
    assert_eq!(out["valid"], true);
    let out = ok(&["extension", "--l", "3", "--A", "", "--orders", "3,9"]);
    assert_eq!(out["B"]["literal"], "3,9");
    failed(&["extension", "--l", "2", "--A", "3", "--orders", "2"], ErrorKind::Domain);
}

#[test]
fn usage_errors() {
    failed(&["dk", "--q", "12"], ErrorKind::Usage);
    failed(&["dk"], ErrorKind::Usage);
    failed(&["frobnicate"], ErrorKind::Usage);
    failed(&["compare-gab", "--q1", "2", "--cl1", "6", "--q2", "2", "--cl2", ""], ErrorKind::Usage);
    failed(&["exceptional", "--q", "2", "--l-max", "100000000000"], ErrorKind::Usage);
    failed(&["zeta", "--curve", "/nonexistent/curve.json"], ErrorKind::Usage);
    let msg = failed(&["zeta", "--curve", &data("singular.json")], ErrorKind::Domain);
    assert!(msg.contains("singular"), "{msg}");
}

#[test]
fn binary_streams_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gabinv");
    let out = Command::new(bin).args(["dk", "--q", "27"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["outputs"]["d"], 1);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("dk: ok"));
    let out = Command::new(bin).args(["dk", "--q", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["waterhouse", "--q", "81"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("tq-profile"));
}
