use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn orthoinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthoinv"))
        .args(args)
        .env_remove("ORTHOINV_SEED")
        .env_remove("ORTHOINV_ATTEMPTS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn degree_bound_example_passes() {
    let o = orthoinv(&[
        "verify", "--suite", "degree-bound", "--kind", "o", "--n", "4", "--d", "2", "--wmax", "2", "--trunc", "4",
        "--seed", "7",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["pass"] == true && r["seed"] == 7));
}

#[test]
fn invalid_configurations_are_usage_errors() {
    for args in [
        &["verify", "--suite", "degree-bound", "--n", "1"][..],
        &["verify", "--suite", "no-such-suite"],
        &["verify", "--suite", "det-vanishing-odd", "--n", "4"],
        &["verify", "--suite", "degree-bound", "--n", "4", "--trunc", "2"],
        &["verify", "--suite", "degree-bound", "--field", "fp:4"],
        &["verify", "--suite", "h-closed-form", "--n", "4", "--field", "q"],
        &["all", "--only", "12"],
        &["frobnicate"],
    ] {
        let o = orthoinv(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn trace_identity_report_has_the_size_four_instance() {
    let o = orthoinv(&["verify", "--suite", "trace-identity", "--n", "4", "--d", "3", "--seed", "1", "--samples", "4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let suites: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert!(suites.contains(&"trace-identity-example"));
}

#[test]
fn reports_are_deterministic_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = orthoinv(&[
            "verify", "--suite", "pf-multiplicative", "--n", "4", "--field", "fp:101", "--seed", "5", "--samples", "6",
            "--parallel", "--json", p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        assert!(o.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_orthoinv"));
        c.args(args).env_remove("ORTHOINV_SEED");
        if let Some(s) = env {
            c.env("ORTHOINV_SEED", s);
        }
        c.output().unwrap()
    };
    let args = ["family", "--n", "4", "--d", "1"];
    let from_env = run(Some("11"), &args);
    let explicit = run(None, &["family", "--n", "4", "--d", "1", "--seed", "11"]);
    assert_eq!(from_env.stdout, explicit.stdout);
    assert_ne!(run(None, &args).stdout, from_env.stdout);
}

#[test]
fn witness_for_d1() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.json");
    let o = orthoinv(&["witness", "--d", "1", "--seed", "0", "--json", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["h_2d+2"], "0");
    assert_eq!(v["verified"], true);
    assert_eq!(v["T"]["n"], 5);
}

#[test]
fn witness_budget_exhaustion_fails() {
    let o = Command::new(env!("CARGO_BIN_EXE_orthoinv"))
        .args(["witness", "--d", "2"])
        .env("ORTHOINV_ATTEMPTS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["attempts"], 3);
    assert!(v["error"].as_str().unwrap().contains("3 attempts"));
}

#[test]
fn pfaffian_of_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    fs::write(
        &p,
        r#"{"n": 4, "ring": "q", "rows": [["0","1","2","3"],["-1","0","4","5"],["-2","-4","0","6"],["-3","-5","-6","0"]], "skew": true}"#,
    )
    .unwrap();
    let o = orthoinv(&["pfaffian", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    // 1*6 - 2*5 + 3*4
    assert_eq!(String::from_utf8_lossy(&o.stdout), "Pf = 8\ndet = 64\n");

    fs::write(&p, r#"{"n": 2, "ring": "q", "rows": [["0","1"],["1","0"]], "skew": true}"#).unwrap();
    assert_eq!(code(&orthoinv(&["pfaffian", p.to_str().unwrap()])), 2);
}

#[test]
fn basis_table_as_csv() {
    let o = orthoinv(&["basis", "--kind", "o", "--n", "4", "--d", "1", "--wmax", "2", "--trunc", "2"]);
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8(o.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("lambda,T_monomial,orbit_sum_poly"));
    assert!(csv.contains("x11^2 + x21^2"));
}

#[test]
fn family_emits_matrix_files() {
    let o = orthoinv(&["family", "--family", "nilpotent", "--n", "4", "--d", "2", "--field", "qi", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let t = &v[0];
    assert_eq!(t["provenance"], "nilpotent-isotropic");
    assert_eq!(t["matrices"].as_array().unwrap().len(), 2);
    assert_eq!(t["matrices"][0]["ring"], "qi");
}

#[test]
fn all_with_small_prime_records_a_skip() {
    let o = orthoinv(&["all", "--only", "1,10", "--field", "fp:3", "--n", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    let skip = v["extra"][0]["skipped"].as_str().unwrap();
    assert!(skip.contains("p <= m"));
}
