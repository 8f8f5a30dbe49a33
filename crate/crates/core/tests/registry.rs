use qalg_core::dsl::suite::Suite;
use qalg_core::verify::{run_suite, Options, Status};

fn symbolic(tags: &[&str]) -> qalg_core::verify::VerificationReport {
    let tags: Vec<String> = tags.iter().map(|s| s.to_string()).collect();
    let suite = Suite::builtin().filter_tags(&tags);
    run_suite(&suite, &Options { trials: 0, ..Options::default() })
}

fn all_verified(tag: &str) {
    let report = symbolic(&[tag]);
    assert!(report.summary.total > 0, "no identities tagged {}", tag);
    for id in &report.identities {
        assert_eq!(id.status, Status::Verified, "{}: {:?} {:?}", id.name, id.residual, id.detail);
    }
}

#[test]
fn localization_registry() {
    all_verified("localization");
}

#[test]
fn canonical_registry() {
    all_verified("canonical");
}

#[test]
fn dirac_registry() {
    all_verified("dirac");
}

#[test]
fn motion_registry() {
    all_verified("motion");
}

#[test]
fn frames_registry() {
    all_verified("frames");
}

#[test]
fn clifford_constant() {
    let report = symbolic(&["dirac"]);
    assert_eq!(report.determined_constants.get("D4").map(String::as_str), Some("-(4/hbar^2)"));
}

#[test]
fn second_accelerated_derivative_remainder() {
    let report = symbolic(&["frames"]);
    let f4 = report.identities.iter().find(|i| i.name == "F4").unwrap();
    assert_eq!(f4.remainders.len(), 4);
    assert!(f4.remainders.iter().all(|r| r.remainder != "0"));
}

#[test]
fn corrupted_identity_fails() {
    let j = r#"{"schema":"qalg-identity/1","identities":[
      {"name":"bad","lhs":"comm(P[mu],X[nu])","rhs":"eta[mu,nu]","free_indices":["mu","nu"],"tags":[]}]}"#;
    let report = run_suite(&Suite::from_json(j).unwrap(), &Options { trials: 0, ..Options::default() });
    assert_eq!(report.identities[0].status, Status::Failed);
    assert!(report.identities[0].residual.is_some());
    assert_eq!(report.exit_code(), 1);
}
