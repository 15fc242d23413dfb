use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ncalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncalc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn universal_on_dual_numbers() {
    let o = ncalc(&["universal", &data("dualnumbers.alg")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim ker mu: 2"));
    assert!(s.contains("[pass] leibniz"));
    assert!(s.contains("[pass] braidings mutually inverse"));
}

#[test]
fn broken_algebra_reports_associativity_at_xxx() {
    let o = ncalc(&["validate", &data("broken.alg")]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("[FAIL] associativity"));
    assert!(s.contains("(x*x)*x != x*(x*x)"));
}

#[test]
fn cartan_pair_of_universal_calculus() {
    let o = ncalc(&["cartan", &data("dualnumbers.alg"), "--fodc", "universal"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim: 2"));
    assert!(s.contains("[pass] twisted leibniz"));
}

#[test]
fn input_errors_exit_two_with_location() {
    let o = ncalc(&["report", &data("corrupted.alg")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate structure triple (0, 1, 1)"));

    let dir = std::env::temp_dir().join(format!("ncalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "{\n  \"dim\": 2,\n  \"unit\": [1, 0\n}\n").unwrap();
    let o = ncalc(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"));

    let o = ncalc(&["--field", "Fp:5", "validate", &data("dualnumbers.alg")]);
    assert_eq!(o.status.code(), Some(2));
    let o = ncalc(&["kaehler", &data("m2.alg")]);
    assert_eq!(o.status.code(), Some(2));
    let o = ncalc(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_invariants_exit_one() {
    let o = ncalc(&["validate", &data("dualnumbers.alg"), "--fodc", &data("broken.fodc")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("at [1, 1]"));
    let o = ncalc(&["reconstruct", &data("dualnumbers.alg"), "--fodc", &data("broken.fodc")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(ncalc(&["--help"]).status.code(), Some(0));
    assert_eq!(ncalc(&["--version"]).status.code(), Some(0));
}

#[test]
fn json_reports_are_reproducible_and_ascii() {
    let args = ["--format", "json", "--seed", "3", "report", &data("qplane.alg")];
    let a = ncalc(&args);
    let b = ncalc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.is_ascii());
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("ncalc-out-{}.json", std::process::id()));
    let o = ncalc(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "splitting",
        &data("m2.alg"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "splitting");
    std::fs::remove_file(path).ok();
}

#[test]
fn prime_field_flag() {
    let o = ncalc(&["--field", "Fp:5", "report", &data("poly3.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("field Fp:5"));
}

#[test]
fn quotient_by_ideal_file() {
    let o = ncalc(&["fodc", &data("dualnumbers.alg"), "--ideal", &data("xx.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim omega: 1"));
}
