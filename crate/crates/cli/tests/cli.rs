//! End-to-end behavior of the `quotsing` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotsing"))
        .args(args)
        .env_remove("WORKERS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    let o = run(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)));
    (code(&o), v)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("quotsing-cli-{}-{name}", std::process::id()))
}

#[test]
fn analyze_minus_identity() {
    let (c, r) = json(&["analyze", "--group", "1/2(1,1,1,1)"]);
    assert_eq!(c, 0);
    assert_eq!(r["format_version"], 1);
    assert_eq!(r["group"]["classification"], "terminal");
    assert_eq!(r["group"]["weight_one_classes"], 0);
}

#[test]
fn analyze_one_third() {
    let (c, r) = json(&["analyze", "--group", "1/3(1,1,1)"]);
    assert_eq!(c, 0);
    assert_eq!(r["group"]["classification"], "canonical_not_terminal");
    assert_eq!(r["group"]["weight_one_classes"], 1);
    assert_eq!(r["toric"]["junior_count"], 1);
}

#[test]
fn analyze_quaternion_file() {
    let (c, r) = json(&["analyze", "--group-file", &corpus("blowup/00-q8.json")]);
    assert_eq!(c, 0);
    assert_eq!(r["group"]["order"], 8);
    assert_eq!(r["group"]["class_count"], 5);
    assert_eq!(r["group"]["module_type"], "(2)");
    assert!(r.get("toric").is_none());
}

#[test]
fn report_keys_in_fixed_order() {
    let o = run(&["analyze", "--group", "1/6(1,2,3)", "--json", "-"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap_or_else(|| panic!("missing {k}"));
    let order = ["format_version", "group", "toric", "checks"];
    assert!(order.windows(2).all(|w| pos(w[0]) < pos(w[1])));
    let group = [
        "name",
        "order",
        "class_count",
        "contains_center",
        "module_type",
        "classification",
        "weight_one_classes",
        "warnings",
    ];
    assert!(group.windows(2).all(|w| pos(w[0]) < pos(w[1])));
    let toric = ["multiplicity", "junior_count", "fan", "terminalization"];
    assert!(toric.windows(2).all(|w| pos(w[0]) < pos(w[1])));
    let term = ["ray_count", "cone_count", "multiplicity_sum", "smooth", "crepant", "terminal\""];
    let tpos = |k: &str| text.find(&format!("\"{k}")).unwrap();
    assert!(term.windows(2).all(|w| tpos(w[0]) < tpos(w[1])));
    assert_eq!(text, String::from_utf8(run(&["analyze", "--group", "1/6(1,2,3)", "--json", "-"]).stdout).unwrap());
}

#[test]
fn resolve_examples() {
    let (c, r) = json(&["resolve", "--group", "1/3(1,1,1)"]);
    assert_eq!(c, 0);
    let t = &r["toric"]["terminalization"];
    assert_eq!((t["ray_count"].clone(), t["cone_count"].clone()), (4.into(), 3.into()));
    assert_eq!(t["multiplicity_sum"], 3);
    assert_eq!(t["smooth"], true);

    let (c, r) = json(&["resolve", "--group", "1/2(1,1,1,1)"]);
    assert_eq!(c, 0);
    let t = &r["toric"]["terminalization"];
    assert_eq!(t["cone_count"], 1);
    assert_eq!((t["terminal"].clone(), t["smooth"].clone()), (true.into(), false.into()));

    let (c, r) = json(&["resolve", "--group", "1/6(1,2,3)"]);
    assert_eq!(c, 0);
    let t = &r["toric"]["terminalization"];
    assert_eq!((t["ray_count"].clone(), t["multiplicity_sum"].clone()), (7.into(), 6.into()));
    assert_eq!(t["smooth"], true);
}

#[test]
fn resolve_writes_fan_file() {
    let p = tmp("third.fan");
    let o = run(&["resolve", "--group", "1/3(1,1,1)", "--out-fan", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&p).unwrap();
    std::fs::remove_file(&p).ok();
    assert!(text.starts_with("# format_version: 1\nlattice n=3\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("ray ")).count(), 4);
    assert_eq!(text.lines().filter(|l| l.starts_with("cone:")).count(), 3);
}

#[test]
fn exit_codes() {
    let o = run(&["analyze", "--group", "1/3(1,1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("diag, position"), "{}", stderr(&o));
    assert_eq!(stderr(&o).lines().count(), 1);

    let o = run(&["resolve", "--group-file", &corpus("blowup/00-q8.json")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("resolve requires an abelian group"));

    let o = run(&["analyze", "--group", "1/2(1,1,1,1)", "--max-order", "1"]);
    assert_eq!(code(&o), 3);

    let o = run(&["resolve", "--group", "1/5(1,1,1)"]);
    assert_eq!(code(&o), 4);

    let o = run(&["verify", "bogus"]);
    assert_eq!(code(&o), 2);
    for s in ["abelian", "blowup", "euler-proj", "cclass-sum", "type22", "trichotomy", "claims"] {
        assert!(stderr(&o).contains(s));
    }

    let o = run(&["analyze", "--group", "1/3(1,1,1)", "--group-file", "x.json"]);
    assert_eq!(code(&o), 2);
    let o = run(&["analyze"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_spec_file_names_the_key() {
    let p = tmp("bad.json");
    std::fs::write(&p, r#"{"name": "x", "conductor": 4, "generators": [[[["1","a"]]]]}"#).unwrap();
    let o = run(&["analyze", "--group-file", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("generators[0][0][0][1]"), "{}", stderr(&o));
    let o = run(&["analyze", "--group-file", "/nonexistent/spec.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn workers_must_be_positive() {
    let o = Command::new(env!("CARGO_BIN_EXE_quotsing"))
        .args(["verify", "claims", "--max-d", "3"])
        .env("WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_small_suites() {
    let (c, r) = json(&["verify", "claims"]);
    assert_eq!(c, 0);
    assert_eq!(r["suite"], "claims");
    assert_eq!(r["failed"], 0);
    assert_eq!(r["total"], 60);
    let (c, r) = json(&["verify", "euler-proj"]);
    assert_eq!(c, 0);
    assert_eq!(r["passed"], 200);
    let (c, _) = json(&["verify", "abelian", "--max-d", "5"]);
    assert_eq!(c, 0);
}

#[test]
fn verify_reads_a_corpus_directory() {
    let (c, r) = json(&["verify", "trichotomy", "--corpus", &corpus("")]);
    assert_eq!(c, 0);
    assert_eq!(r["total"], 9);
    let dir = tmp("corpus");
    std::fs::create_dir_all(dir.join("cclass-sum")).unwrap();
    std::fs::write(dir.join("cclass-sum/00-bad.json"), "{\"name\": 3}").unwrap();
    let o = run(&["verify", "cclass-sum", "--corpus", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("00-bad.json"), "{}", stderr(&o));
}
