use std::process::{Command, Output};

fn k3fib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3fib")).args(args).output().expect("k3fib runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_entry_is_a_usage_error() {
    let o = k3fib(&["verify", "999"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("999"));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_arguments() {
    assert_eq!(k3fib(&["verify"]).status.code(), Some(2));
    assert_eq!(k3fib(&["verify", "all", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(k3fib(&["verify", "all", "--json", "--markdown"]).status.code(), Some(2));
    assert_eq!(k3fib(&["elliptic", "analyze", "--model", "0", "0", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(k3fib(&["elliptic", "height", "k", "--point", "2", "0"]).status.code(), Some(2));
    assert_eq!(k3fib(&["--catalog", "/nonexistent/catalog.json", "verify", "1"]).status.code(), Some(2));
    assert_eq!(k3fib(&["niemeier", "validate", "A24"]).status.code(), Some(1));
    assert!(k3fib(&["--help"]).status.success());
}

#[test]
fn verify_json_does_not_depend_on_jobs() {
    let a = k3fib(&["verify", "all", "--json", "--jobs", "1"]);
    let b = k3fib(&["verify", "all", "--json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 30);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn enumeration_as_markdown() {
    let o = k3fib(&["nishiyama", "enumerate", "--markdown"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| #") && !l.starts_with("| ---")).collect();
    assert_eq!(rows.len(), 30);
    assert!(rows[0].contains("E8^3") && rows[0].contains("A3 E7 E8"));
    assert!(rows.iter().any(|r| r.contains("D5^2A7^2") && r.ends_with("| Z/8 |")));
}

#[test]
fn single_entry_and_failing_catalog() {
    let o = k3fib(&["verify", "s"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with(" 1-s"));

    let mut v: serde_json::Value = serde_json::from_str(k3fib_catalog::builtin_catalog_text()).unwrap();
    v["entries"][7]["points"][0]["height"] = "2".into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = k3fib(&["--catalog", path.to_str().unwrap(), "verify", "b"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("height"));
}

#[test]
fn elliptic_subcommands() {
    let o = k3fib(&["elliptic", "analyze", "s", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["euler_sum"], 24);
    assert_eq!(v["symbols"], serde_json::json!(["2I1", "I2", "I4", "2I8"]));

    let o = k3fib(&["elliptic", "analyze", "--model", "0", "0", "0", "-3*t^4", "t^5 + t^7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = k3fib(&["elliptic", "height", "k", "--point", "1", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"][0]["height"], "4/3");
    assert_eq!(v["determinant"], "4/3");
}

#[test]
fn lattice_subcommands() {
    let o = k3fib(&["niemeier", "list", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 24);
    let o = k3fib(&["niemeier", "validate", "D9A15"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("384 roots"));
    let o = k3fib(&["nishiyama", "frame", "E7A17"]);
    assert!(stdout(&o).contains("torsion Z/3"));
}
