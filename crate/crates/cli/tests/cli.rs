use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn repo(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn params(name: &str) -> String {
    repo(&format!("params/{name}")).display().to_string()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(repo("docs/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

/// Runs the binary with `--json` and returns (exit code, parsed report).
fn run_json(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_linfrac")).args(args).arg("--json").output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Value = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("no JSON from {args:?} ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)));
    let errors: Vec<String> = schema().iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations for {args:?}: {errors:?}");
    assert_eq!(report["meta"]["exit_code"], code);
    (code, report)
}

fn run_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_linfrac")).args(args).output().unwrap().status.code().unwrap()
}

fn temp_params(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn charpoly_generic_k3() {
    let (code, r) = run_json(&["charpoly", "--model", "generic", "--k", "3"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["charpoly"], "x^3 - x^2 - x - 1");
    assert_eq!(res["equal"], true);
    let radius = res["spectral_radius"]["value"].as_f64().unwrap();
    assert!((radius - 1.839287).abs() < 1e-6);
    assert_eq!(res["growth"]["kind"], "exponential");
}

#[test]
fn charpoly_nstar_factorization() {
    // (x^3 - 1)(x^6 + 1) expanded
    let (code, r) = run_json(&["charpoly", "--model", "nstar", "--k", "3", "--nstar", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["charpoly"], "x^9 - x^6 + x^3 - 1");
    assert_eq!(r["result"]["factored"], "Phi_1 * Phi_3 * Phi_4 * Phi_12");
    assert_eq!(r["result"]["growth"]["order"], 12);
}

#[test]
fn charpoly_lyness_quadratic() {
    let (code, r) = run_json(&["charpoly", "--model", "lyness", "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["equal"], true);
    assert_eq!(r["result"]["growth"], serde_json::json!({"kind": "polynomial", "degree": 2}));
    assert_eq!(r["result"]["spectral_radius"]["exact"], true);
}

#[test]
fn charpoly_needs_nstar_value() {
    assert_eq!(run_code(&["charpoly", "--model", "nstar", "--k", "3"]), 1);
    assert_eq!(run_code(&["charpoly", "--model", "bogus", "--k", "3"]), 1);
    assert_eq!(run_code(&["charpoly", "--model", "generic", "--k", "2"]), 1);
}

#[test]
fn classify_generic() {
    let (code, r) = run_json(&["classify", "--params", &params("generic_k3.json")]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["generic"], true);
    assert!((res["dynamical_degree"].as_f64().unwrap() - 1.8393).abs() < 1e-4);
    assert_eq!(res["verdict"], serde_json::json!({"kind": "not_periodic", "reason": "beta_beyond_first"}));
}

#[test]
fn classify_period16() {
    let (code, r) = run_json(&["classify", "--params", &params("period16_k4.json"), "--trials", "6"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["critical"], true);
    assert_eq!(res["nstar"]["n_star"], 4);
    assert_eq!(res["verdict"], serde_json::json!({"kind": "periodic", "period": 16}));
    assert_eq!(r["meta"]["field"], "Q(zeta_8)");
}

#[test]
fn classify_is_deterministic() {
    let args = ["classify", "--params", &params("lyness_k3_a1.json"), "--seed", "7", "--trials", "6"];
    let (_, a) = run_json(&args);
    let (_, b) = run_json(&args);
    assert_eq!(serde_json::to_string(&a["result"]).unwrap(), serde_json::to_string(&b["result"]).unwrap());
    assert_eq!(a["meta"]["inputs"]["alpha"][0], "1");
}

#[test]
fn degseq_generic_k3() {
    let (code, r) = run_json(&["degseq", "--params", &params("generic_k3.json"), "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["empirical"], serde_json::json!([1, 2, 4, 7, 13, 24, 44]));
    assert_eq!(r["result"]["predicted"], r["result"]["empirical"]);
    assert_eq!(r["result"]["verdict"], "match");
}

#[test]
fn lyness_certify_period8() {
    let (code, r) = run_json(&["lyness", "--k", "3", "--a", "1", "--action", "certify", "--trials", "8"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["period"], 8);
    assert_eq!(r["result"]["certificate"]["verdict"], "certified");
}

#[test]
fn lyness_invariants_k5() {
    let (code, r) = run_json(&["lyness", "--k", "5", "--a", "2", "--action", "invariants"]);
    assert_eq!(code, 0);
    let members = r["result"]["invariants"]["members"].as_array().unwrap();
    let names: Vec<&str> = members.iter().map(|m| m["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["p0", "p1", "p2", "p3"]);
    assert!(members.iter().all(|m| m["verified"] == true));
}

#[test]
fn lyness_relations_and_integrals() {
    let (code, r) = run_json(&["lyness", "--k", "6", "--action", "relations"]);
    assert_eq!(code, 0);
    assert!(r["result"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    let (code, r) = run_json(&["lyness", "--k", "4", "--a", "3/2", "--action", "integrals", "--trials", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["holds"], true);
    assert_eq!(run_code(&["lyness", "--k", "4", "--action", "integrals"]), 1);
    assert_eq!(run_code(&["lyness", "--k", "4", "--a", "x", "--action", "invariants"]), 1);
}

#[test]
fn certify_exit_codes() {
    let p = params("lyness_k3_a1.json");
    let (code, r) = run_json(&["certify", "--params", &p, "--trials", "6"]);
    assert_eq!((code, r["result"]["verdict"].as_str().unwrap()), (0, "certified"));
    assert_eq!(r["result"]["seeds"], serde_json::json!([1]));
    let (code, r) = run_json(&["certify", "--params", &p, "--period", "7", "--trials", "6"]);
    assert_eq!((code, r["result"]["verdict"].as_str().unwrap()), (2, "refuted"));
    assert!(r["result"]["witnesses"][0]["point"].is_array());
    let (code, r) = run_json(&["certify", "--params", &p, "--period", "16", "--trials", "6"]);
    assert_eq!((code, r["result"]["verdict"].as_str().unwrap()), (2, "not_minimal"));
    assert_eq!(r["result"]["witnesses"][0]["divisor"], 8);
}

#[test]
fn certify_family() {
    let (code, r) = run_json(&["certify", "--family", "period4k", "--k", "3", "--trials", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["period"], 12);
    assert_eq!(run_code(&["certify", "--family", "period4k"]), 1);
    assert_eq!(run_code(&["certify"]), 1);
}

#[test]
fn nstar_reports() {
    let (code, r) = run_json(&["nstar", "--params", &params("period16_k4.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["n_star"], 4);
    assert_eq!(r["result"]["predicted_period"], 16);
    assert_eq!(run_code(&["nstar", "--params", &params("generic_k3.json")]), 1);
}

#[test]
fn bad_inputs_exit_one() {
    assert_eq!(run_code(&["classify", "--params", "/nonexistent/params.json"]), 1);
    let garbage = temp_params("{not json");
    assert_eq!(run_code(&["classify", "--params", garbage.path().to_str().unwrap()]), 1);
    let zero = temp_params(r#"{"k": 3, "field": "rational", "alpha": [0, 0, 0, 0], "beta": [0, 1, 0, 0]}"#);
    assert_eq!(run_code(&["classify", "--params", zero.path().to_str().unwrap()]), 1);
    let short = temp_params(r#"{"k": 3, "field": "rational", "alpha": [0, 1], "beta": [0, 1, 0, 0]}"#);
    assert_eq!(run_code(&["degseq", "--params", short.path().to_str().unwrap()]), 1);
    assert_eq!(run_code(&["no-such-command"]), 1);
}

#[test]
fn table_output() {
    let out = Command::new(env!("CARGO_BIN_EXE_linfrac"))
        .args(["degseq", "--params", &params("generic_k3.json"), "--n", "4"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("degseq (seed 1, field Q)"));
    assert!(text.contains("verdict  match"));
}
