//! The nvk binary on the shipped examples: exit codes and machine reports.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn example(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nvk-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    report: Option<Value>,
}

fn nvk(tag: &str, args: &[&str]) -> Run {
    let json = scratch(tag).join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_nvk"))
        .args(["--omit-timing", "--json", json.to_str().unwrap()])
        .args(args)
        .output()
        .unwrap();
    let report = std::fs::read_to_string(&json).ok().map(|s| serde_json::from_str(&s).unwrap());
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        report,
    }
}

fn assert_schema(v: &Value, code: i32) {
    assert_eq!(v["schema"], "report_v1");
    assert_eq!(v["tool"]["name"], "nvk");
    assert_eq!(v["exit_code"], code);
    assert_eq!(v["passed"], code == 0);
    assert!(v.get("timing").is_none());
    assert!(v["reports"].is_array());
    assert!(v["outputs"].is_object());
    assert!(v["command"].as_array().unwrap().iter().all(|a| a != "--json"));
}

#[test]
fn check_passes_on_the_novikov_example() {
    let r = nvk("check", &["check", &example("novikov_2d.alg"), "--class", "novikov"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("result: PASS"));
    let v = r.report.unwrap();
    assert_schema(&v, 0);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn wrong_class_fails_with_a_witness() {
    let r = nvk("lie", &["check", &example("novikov_2d.alg"), "--class", "lie"]);
    assert_eq!(r.code, 2);
    let v = r.report.unwrap();
    assert_schema(&v, 2);
    let witnesses: usize = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|rep| rep["checks"].as_array().unwrap())
        .map(|c| c["witnesses"].as_array().map_or(0, Vec::len))
        .sum();
    assert!(witnesses > 0);
}

#[test]
fn bialgebra_family() {
    let file = example("novikov_2d.alg");
    let ok = nvk("bi0", &["bialgebra", &file, "--coalgebra", "lambda_0", "--equivalence"]);
    assert_eq!(ok.code, 0, "{}", ok.stdout);
    let bad = nvk("bi1", &["bialgebra", &file, "--coalgebra", "lambda_1"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stdout.contains("coproduct_of_product"));
}

#[test]
fn yang_baxter_examples() {
    let sv = example("sv3.alg");
    assert_eq!(nvk("nybe", &["nybe", &sv, "--r", "b^c - c^b"]).code, 0);
    assert_eq!(nvk("nybe-file", &["nybe", &sv]).code, 0);
    assert_eq!(nvk("cybe", &["cybe", &sv]).code, 0);
    let asym = nvk("cybe-bad", &["cybe", &sv, "--r", "b^c"]);
    assert_eq!(asym.code, 2);
    let aff = nvk("affinize", &["affinize", &sv]);
    assert_eq!(aff.code, 0, "{}", aff.stdout);
    assert!(!aff.report.unwrap()["outputs"].as_object().unwrap().is_empty());
}

#[test]
fn pre_novikov_pipeline() {
    let file = example("pre_novikov_1d.alg");
    let lift = nvk("oop", &["ooperator", &file, "--pre-novikov", "P"]);
    assert_eq!(lift.code, 0, "{}", lift.stdout);
    assert_eq!(nvk("qf", &["quasifrobenius", &file, "--form", "omega", "--functional", "e*@-2 = 1"]).code, 0);
    assert_eq!(nvk("coboundary", &["coboundary", &file, "--tensor", "r"]).code, 0);
}

#[test]
fn double_with_a_finite_factor() {
    let r = nvk("double", &["double", &example("novikov_2d.alg"), "--coalgebra", "lambda_0"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn search_and_reproducibility() {
    let args = ["search", "--dim", "1", "--field", "2"];
    let a = nvk("search-a", &args);
    assert_eq!(a.code, 0);
    let v = a.report.unwrap();
    assert_eq!(v["outputs"]["search"]["count"], 2);
    let b = nvk("search-b", &args);
    assert_eq!(b.report.unwrap(), v);
    assert_eq!(nvk("search-cap", &["search", "--dim", "3", "--field", "2"]).code, 2);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(nvk("usage", &["check"]).code, 64);
    assert_eq!(nvk("missing", &["check", "/nonexistent/file.alg"]).code, 64);
    assert_eq!(nvk("field", &["search", "--dim", "1", "--field", "4"]).code, 64);
    let path = scratch("parse").join("bad.alg");
    std::fs::write(&path, "field Q\nbasis x y\nx*z = y\n").unwrap();
    let r = nvk("parse", &["check", path.to_str().unwrap()]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("3:") || r.stdout.contains("3:"), "{}{}", r.stdout, r.stderr);
}

#[test]
fn sequential_mode_gives_the_same_report() {
    let file = example("sv3.alg");
    let par = nvk("par", &["affinize", &file]).report.unwrap();
    let seq = nvk("seq", &["--sequential", "affinize", &file]).report.unwrap();
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("command");
        v
    };
    assert_eq!(strip(par), strip(seq));
}
