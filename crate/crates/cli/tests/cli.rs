//! End-to-end tests that drive the `boxtimes` binary the way a user
//! would: through argv, stdout, files, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn boxtimes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxtimes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn build_emits_graph_json_and_writes_the_same_bytes() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("fan.json");
    let out = boxtimes(&["build", "--family", "fan:9", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    // centre plus a 9-vertex rim path: 9 spokes and 8 rim edges
    assert_eq!(v["n"], 10);
    assert_eq!(v["edges"].as_array().unwrap().len(), 17);
    let on_disk = std::fs::read(&path).unwrap();
    assert_eq!(on_disk, out.stdout);
}

#[test]
fn build_dot_format_lists_undirected_edges() {
    let out = boxtimes(&["build", "--family", "path:4", "--format", "dot"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches(" -- ").count(), 3);
}

#[test]
fn build_product_multiplies_vertex_counts() {
    let out = boxtimes(&["build", "--family", "fan:4", "--family2", "path:3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["n"], 15);
}

#[test]
fn cap_refuses_oversized_builds() {
    let out = boxtimes(&["build", "--family", "complete:2000", "--cap", "100"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn bad_family_string_is_an_input_error() {
    let out = boxtimes(&["build", "--family", "nonsense:3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn colour_bundle_passes_its_own_verification() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bundle.json");
    let out = boxtimes(&[
        "colour",
        "--family",
        "fan:16",
        "--family2",
        "path:2",
        "--algo",
        "two_colour_product",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let bundle = stdout_json(&out);
    assert_eq!(bundle["certificate"]["algorithm"], "two_colour_product");

    let check = boxtimes(&["verify", "--bundle", path.to_str().unwrap()]);
    assert_eq!(exit_code(&check), 0);
    let v = stdout_json(&check);
    assert_eq!(v["pass"], true);
    assert!(v["findings"].as_array().unwrap().is_empty());
}

fn write_tampered(path: &Path, tamper: impl FnOnce(&mut Value)) -> std::path::PathBuf {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    tamper(&mut v);
    let out = path.with_extension("tampered.json");
    std::fs::write(&out, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    out
}

#[test]
fn verify_flags_a_perturbed_bound_as_formula_mismatch() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bundle.json");
    let out = boxtimes(&[
        "colour", "--family", "fan:16", "--family2", "path:2",
        "--algo", "two_colour_product", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let tampered = write_tampered(&path, |v| {
        let b = v["certificate"]["bound_value"].as_f64().unwrap();
        v["certificate"]["bound_value"] = Value::from(b * 1.05);
    });
    let check = boxtimes(&["verify", "--bundle", tampered.to_str().unwrap()]);
    assert_eq!(exit_code(&check), 1);
    let v = stdout_json(&check);
    assert_eq!(v["pass"], false);
    assert!(v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["kind"] == "formula_mismatch"));
}

#[test]
fn verify_flags_a_tampered_colouring_as_bound_violation() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bundle.json");
    // 100 vertices: an all-one-colour blob (100) clears the bound
    // 2 * (3 * 100)^(2/3), which is just under 90
    let out = boxtimes(&[
        "colour", "--family", "fan:49", "--family2", "path:2",
        "--algo", "two_colour_product", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let tampered = write_tampered(&path, |v| {
        let n = v["colouring"]["colours"].as_array().unwrap().len();
        v["colouring"]["colours"] = Value::from(vec![0u32; n]);
    });
    let check = boxtimes(&["verify", "--bundle", tampered.to_str().unwrap()]);
    assert_eq!(exit_code(&check), 1);
    let v = stdout_json(&check);
    assert_eq!(v["pass"], false);
    let kinds: Vec<_> = v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["kind"].as_str().unwrap().to_string())
        .collect();
    assert!(kinds.iter().any(|k| k == "bound_violation"), "kinds: {kinds:?}");
    assert!(kinds.iter().any(|k| k == "report_mismatch"), "kinds: {kinds:?}");
    assert!(v["worst"].is_array());
}

#[test]
fn colour_requires_a_second_factor_for_product_algorithms() {
    let out = boxtimes(&["colour", "--family", "fan:9", "--algo", "two_colour_product"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn search_reports_the_exact_minimum_for_a_fan() {
    let out = boxtimes(&["search", "--family", "fan:6", "--colours", "2"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["min_clustering"], 3);
    assert_eq!(v["lower"], 3);
    assert_eq!(v["upper"], 3);
    assert_eq!(v["witness"]["colours"].as_array().unwrap().len(), 7);
}

#[test]
fn search_with_tiny_budget_reports_exhaustion() {
    let out = boxtimes(&[
        "search", "--family", "fan:9", "--family2", "fan:9",
        "--colours", "3", "--budget", "10",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    // the budget is polled in chunks, so small thresholds may still
    // resolve and leave a nontrivial lower bound behind
    let status = v["status"].as_str().unwrap();
    assert!(status == "bound_only" || status == "exhausted", "status: {status}");
    assert!(v["min_clustering"].is_null());
    assert!(v["lower"].as_u64().unwrap() < v["upper"].as_u64().unwrap());
}

#[test]
fn sweep_prints_csv_then_the_fitted_exponent() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = boxtimes(&[
        "sweep",
        "--family", "fan:m^2",
        "--family2", "path:m",
        "--algo", "two_colour_product",
        "--sizes", "2,3,4,5",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("m,n,clustering,bound\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('m')).count(), 4);
    let tail = text.lines().last().unwrap();
    assert!(tail.starts_with("# fitted_exponent="), "tail: {tail}");
    assert!(tail.contains("target=0.666667"), "tail: {tail}");
    // the file holds the CSV rows; the comment line stays on stdout
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert!(on_disk.starts_with("m,n,clustering,bound\n"));
    assert!(!on_disk.contains('#'));
}

#[test]
fn sweep_with_one_size_is_an_input_error() {
    let out = boxtimes(&[
        "sweep", "--family", "fan:m", "--algo", "c_colour_tw",
        "--colours", "2", "--sizes", "5",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn hex_finds_a_monochromatic_crossing() {
    let out = boxtimes(&["hex", "--rows", "3", "--cols", "3", "--interior", "000111000"]);
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    // the all-ones middle row carries a right-to-left crossing
    assert_eq!(v["colour"], 1);
    assert!(v["path"].as_array().unwrap().len() >= 3);
}

#[test]
fn hex_rejects_an_interior_of_the_wrong_length() {
    let out = boxtimes(&["hex", "--rows", "3", "--cols", "3", "--interior", "0101"]);
    assert_eq!(exit_code(&out), 2);
}
