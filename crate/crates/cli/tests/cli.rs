use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_posnet"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn close(v: &Value, re: f64, im: f64) -> bool {
    (v[0].as_f64().unwrap() - re).abs() < 1e-12 && (v[1].as_f64().unwrap() - im).abs() < 1e-12
}

#[test]
fn h1_of_pseudocircle() {
    let out = run(&["poset", "h1", "pseudocircle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), json!({ "free_rank": 1, "torsion": [] }));
    let from_file = run(&["poset", "h1", &data("circle.json")]);
    assert_eq!(from_file.stdout, out.stdout);
}

#[test]
fn chern_along_gamma() {
    let out = run(&["bundle", "chern", "l_i", "--loop", "gamma"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(close(&v["c1"], 0.0, 1.0));
    assert!(close(&v["c"][0], 1.0, 0.0));
    assert!(close(&v["c"][1], 1.0, -1.0));
    let from_files = run(&["bundle", "chern", &data("l_i.json"), "--loop", &data("gamma.json")]);
    assert_eq!(from_files.stdout, out.stdout);
}

#[test]
fn classify_places_the_zero() {
    let v = json_of(&run(&["bundle", "classify", "l_i"]));
    assert_eq!(v["group"], "Z");
    assert!(close(&v["zeros"][0], -0.5, -0.5));
}

#[test]
fn emit_is_byte_identical() {
    for name in ["chain3", "pseudocircle", "l_omega", "twisted_circle", "swap_t2"] {
        let out = run(&["fixtures", "emit", name]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(out.stdout, std::fs::read(golden(&format!("{name}.json"))).unwrap(), "{name}");
    }
}

#[test]
fn reports_match_golden_files() {
    for name in ["product", "rp2", "diag", "twisted_cone", "twisted_pair"] {
        let out = run(&["fixtures", "report", name]);
        assert_eq!(out.stdout, std::fs::read(golden(&format!("{name}.report.json"))).unwrap(), "{name}");
    }
}

#[test]
fn output_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("posnet-cli-{}.json", std::process::id()));
    let out = run(&["fixtures", "emit", "chain3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(golden("chain3.json")).unwrap());
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_one() {
    for args in [&["poset"][..], &["poset", "nope", "x"], &["--tolerance", "-1", "poset", "h1", "point"], &["--budget", "0", "poset", "h1", "point"]] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_two_with_diagnostics() {
    let cases = [
        (vec!["bundle".to_string(), "validate".into(), data("not_unitary.json")], "NotUnitary"),
        (vec!["poset".into(), "h1".into(), data("cyclic.json")], "OrderCycle"),
        (vec!["topology".into(), "exactness".into(), "twisted_pair".into()], "DisconnectedFibre"),
        (vec!["poset".into(), "pi1".into(), "pair".into()], "Disconnected"),
        (vec!["fixtures".into(), "emit".into(), "nothing".into()], "Parse"),
    ];
    for (args, kind) in cases {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v = json_of(&out);
        assert_eq!(v["error"], kind);
        assert!(v["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn quasinet_validation() {
    let v = json_of(&run(&["bundle", "validate", &data("quasinet.json")]));
    assert_eq!(v["is_quasinet"], true);
    assert_eq!(v["is_net"], false);
    assert_eq!(v["rank_function"]["0"], 1);
}

#[test]
fn cohomology_agrees_for_finite_coefficients() {
    for coeff in ["Z", "Z/2", "Z/6", "Z^2"] {
        let v = json_of(&run(&["poset", "cohomology", "rp2", "--coeff", coeff]));
        assert_eq!(v["agree"], true, "{coeff}");
    }
}

#[test]
fn random_loops_follow_the_seed() {
    let a = run(&["bundle", "chern", "diag", "--loop", "random:6", "--seed", "11"]);
    let b = run(&["bundle", "chern", "diag", "--loop", "random:6", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["loop"]["seed"], 11);
}

#[test]
fn homotopy_with_budget() {
    let v = json_of(&run(&["poset", "homotopic", "pseudocircle", "gamma", "word:7"]));
    assert_eq!(v["result"], "yes");
    let v = json_of(&run(&["poset", "homotopic", "pseudocircle", "gamma", "word:10"]));
    assert_eq!(v["result"], "no");
}

#[test]
fn remaining_subcommands_succeed() {
    for args in [
        &["poset", "validate", "product"][..],
        &["poset", "pi1", "rp2"],
        &["hurewicz", "roundtrip", "product"],
        &["bundle", "c1", "diag"],
        &["bundle", "kclasses", "t3"],
        &["bundle", "decompose", "diag"],
        &["bundle", "iso", "t2", "t2"],
        &["bundle", "sections", "t2"],
        &["topology", "opens", "pseudocircle"],
        &["topology", "transitions", "l_omega"],
        &["topology", "cylinders", "twisted_pair"],
        &["fixtures", "list"],
        &["fixtures", "split", "swap_t2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        json_of(&out);
    }
}
