use std::process::{Command, Output};

fn qalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qalg")).args(args).env_remove("QALG_TRUNC").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn suite_file(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("suite.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn commutator_of_momentum_and_position() {
    let o = qalg(&["comm", "P[0]", "X[0]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1");
    let o = qalg(&["comm", "D", "P[2]"]);
    assert_eq!(stdout(&o).trim(), "P2");
}

#[test]
fn simplify_applies_the_spin_rule() {
    let o = qalg(&["simplify", "gamma*gamma"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "1".to_string()));
    let o = qalg(&["simplify", "W[1]*P[1]", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("steps"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(qalg(&["simplify", "comm(P[0]"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = suite_file(&dir, r#"{"schema":"qalg-identity/1","identities":[{"name":"x","lhs":"P[","rhs":"0"}]}"#);
    assert_eq!(qalg(&["check", "--suite", &path]).status.code(), Some(2));
    let path = suite_file(&dir, r#"{"schema":"other/1","identities":[]}"#);
    assert_eq!(qalg(&["check", "--suite", &path]).status.code(), Some(2));
}

#[test]
fn corrupted_suite_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = suite_file(
        &dir,
        r#"{"schema":"qalg-identity/1","identities":[
          {"name":"L4","lhs":"comm(P[mu],X[nu])","rhs":"eta[mu,nu]","free_indices":["mu","nu"],"tags":["localization"]}]}"#,
    );
    let o = qalg(&["check", "--suite", &path, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "qalg-report/1");
    assert_eq!(v["identities"][0]["status"], "failed");
    assert_eq!(v["identities"][0]["oracle"]["status"], "failed");
    assert!(v["identities"][0]["residual"].is_string());
}

#[test]
fn empty_tag_filter_is_not_an_error() {
    let o = qalg(&["check", "--builtin", "--tags", "no-such-tag", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["total"], 0);
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["check", "--tags", "dirac,motion", "--json", "--seed", "5"];
    let (a, b) = (qalg(&args), qalg(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["determined_constants"]["D4"], "-(4/hbar^2)");
    assert_eq!(v["summary"]["seed"], 5);
}

#[test]
fn truncation_override_from_environment() {
    let run = |t: &str| {
        Command::new(env!("CARGO_BIN_EXE_qalg"))
            .args(["check", "--tags", "frames", "--json", "--trials", "0"])
            .env("QALG_TRUNC", t)
            .output()
            .unwrap()
    };
    let o = run("1");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["truncation_override"], 1);
    assert_eq!(run("one").status.code(), Some(2));
}

#[test]
fn oracle_subcommand() {
    let o = qalg(&["oracle", "--tags", "canonical", "--trials", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "qalg-oracle/1");
    assert_eq!(v["so42_table"]["matched"], 105);
    let text = stdout(&qalg(&["oracle", "--tags", "frames", "--trials", "2"]));
    assert!(text.contains("105/105"));
    assert!(text.contains("sector_unsupported"));
}

#[test]
fn builtin_registry_verifies() {
    let o = qalg(&["check", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("failed 0"));
}
