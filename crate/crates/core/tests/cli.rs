mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;
use critcycle::cli::parse_rational_map;
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critcycle")).args(args).env_remove("CRITCYCLE_CACHE").env_remove("CRITCYCLE_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn curve_equations() {
    assert_eq!(stdout(&run(&["curve-eq", "-n", "1"])), "r - 2\n");
    assert_eq!(stdout(&run(&["curve-eq", "-n", "2"])), "2r + s\n");
    assert_eq!(stdout(&run(&["curve-eq", "-n", "3"])), "2r^3 + 5r^2s - r^2 + 4rs^2 - 2rs + 12r + s^3 + 28\n");
}

#[test]
fn portrait_with_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let (dot, js) = (dir.path().join("out.dot"), dir.path().join("out.json"));
    let out = stdout(&run(&[
        "portrait", "--family", "period4", "--c", "5/2", "--dot", dot.to_str().unwrap(), "--json", js.to_str().unwrap(),
    ]));
    assert!(out.starts_with("class F2\nvertices 13\n"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches(" -> ").count(), 13);
    assert!(text.contains("\"5/2\""));
    let v = json_file(&js);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 13);
    assert_eq!(v["class"]["name"], "F2");
    assert_eq!(v["meta"]["parameter"], "5/2");
    let neg = stdout(&run(&["portrait", "--family", "period4", "--c", "-11/3"]));
    assert!(neg.starts_with("class I2\nvertices 9\n"));
}

#[test]
fn sweep_resumes_from_its_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("census.jsonl");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |out: &Path, jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_critcycle"))
            .args(["sweep", "--family", "period4", "--height", "6", "--json", out.to_str().unwrap()])
            .env("CRITCYCLE_CACHE", &cache)
            .env("CRITCYCLE_JOBS", jobs)
            .output()
            .unwrap()
    };
    stdout(&args(&a, "1"));
    let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
    stdout(&args(&b, "3"));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), lines);
    let (first, second) = (json_file(&a), json_file(&b));
    assert_eq!(second["computed"], 0);
    assert_eq!(second["reused"], first["parameters"]);
    assert_eq!(first["classes"], second["classes"]);
    let header: Value = serde_json::from_str(std::fs::read_to_string(&cache).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(header["family"], "period4");

    // a fresh sweep with a different worker count gives the same aggregates
    let csv = dir.path().join("c.csv");
    let o = run(&["sweep", "--family", "period4", "--height", "6", "--jobs", "2", "--csv", csv.to_str().unwrap(), "--json", "-"]);
    let fresh: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(fresh["classes"], first["classes"]);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("c,class\n"));
    assert_eq!(rows.lines().count() as u64, 1 + first["parameters"].as_u64().unwrap());
}

#[test]
fn errors_are_reported_with_status() {
    let o = run(&["dynatomic", "--map", "x/(x", "-n", "1", "--json-errors"]);
    assert_eq!(o.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "syntax");
    assert!(e["error"]["message"].as_str().unwrap().contains("offset 4"));

    let o = run(&["portrait", "--family", "period4", "--c", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("excluded"));

    let o = run(&["no-such-command", "--json-errors"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "usage");

    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn map_commands() {
    let co = stdout(&run(&["coords", "--map", "1 - (c+1)/x + c/x^2", "--c", "1"]));
    assert_eq!(co, "(r, s) = (-6, 8)\nS(r, s) = 64\n");
    let co = stdout(&run(&["coords", "--map", "(2*x-1)/((9/2)*x^2-1)"]));
    assert_eq!(co, "(r, s) = (-6, 12)\nS(r, s) = 0\n");
    assert_eq!(stdout(&run(&["u-invariant", "--map", "x^2 - 2", "-n", "2"])), "-4\n");
    assert_eq!(stdout(&run(&["dynatomic", "--map", "x^2 + t", "-n", "2"])), "x^2 + x + (t + 1)\n");
    assert_eq!(stdout(&run(&["dynatomic", "--map", "x^2 + t", "-n", "1", "-m", "1"])), "x^2 + x + t\n");
    assert_eq!(stdout(&run(&["trace-poly", "--map", "x^2 - 2", "-n", "2"])), "x + 1\n");
    assert_eq!(stdout(&run(&["period2-param", "--kind", "from-q", "--value", "2"])), "c = 81/8\n");
    assert!(stdout(&run(&["classify-psi", "--c", "400/343"])).starts_with("P4 over Q(sqrt(-3))"));
    assert!(stdout(&run(&["verify-family", "--family", "period3", "--c", "-3/7"])).contains("verified"));
    let x3 = stdout(&run(&["intersect-symmetry", "-n", "3"]));
    assert!(x3.contains("x^4 - 16*x^3 + 112*x^2 - 320*x + 512"));
}

#[test]
fn modular_curve_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.json");
    stdout(&run(&["modular-curve", "--family", "period4", "--json", path.to_str().unwrap()]));
    let doc = json_file(&path);
    let curves = doc["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 9);
    for c in curves {
        for key in ["tag", "params", "polynomial", "exceptional"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    assert_eq!(doc["bad"]["rationals"], serde_json::json!(["-1", "0", "1"]));
    let one = stdout(&run(&["modular-curve", "--curve", "Y1(2)"]));
    assert_eq!(one, "Y1(2): -t^2*x + t*x^2 - t - x^2 + 2*x\n");

    let at = |t: &str| stdout(&run(&["fiber-product", "--first", "Y1(2)", "--second", "Y(1,inf)", "--t", t]));
    // 6x² - 17x - 10 and 63x² - 55x - 50
    assert_eq!(at("5/2"), "t = 5/2: [\"-1/2\", \"10/3\"] x [\"-5/9\", \"10/7\"]\n");
    assert_eq!(at("2"), "t = 2: [] x []\n");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_maps_parse_back(phi in quadratic_map()) {
        let back = parse_rational_map(&phi.to_string(), &Default::default()).unwrap();
        prop_assert_eq!(back, phi);
    }
}
