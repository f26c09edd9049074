use std::process::{Command, Output};

use serde_json::Value;

fn su11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn morse_spectrum_csv() {
    let o = su11(&["spectrum", "--family", "morse", "--A", "2.5", "--B", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,energy\n0,-6.25\n1,-2.25\n2,-0.25\n");
}

#[test]
fn coulomb_spectrum_is_capped() {
    let o = su11(&["spectrum", "--family", "coulomb", "--Z", "1", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    for (n, l) in levels.iter().enumerate() {
        let e = l["energy"].as_f64().unwrap();
        assert!((e + 1.0 / ((n + 1) * (n + 1)) as f64).abs() < 1e-15);
    }
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn deformed_coulomb_spectrum_is_finite() {
    let o = su11(&["spectrum", "--family", "coulomb", "--Z", "1", "--alpha", "0.1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn oscillator_spectrum_default_levels() {
    let o = su11(&["spectrum", "--family", "ho", "--omega", "1"]);
    let v = json(&o);
    let e: Vec<f64> = v["levels"].as_array().unwrap().iter().map(|l| l["energy"].as_f64().unwrap()).collect();
    assert_eq!(e, vec![1.5, 3.5, 5.5, 7.5, 9.5, 11.5]);
}

#[test]
fn verify_passes() {
    let o = su11(&["verify", "--family", "morse", "--A", "2.5", "--B", "1", "--alpha", "0.1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["sections"]["oracle"].as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn verify_with_tight_tolerance() {
    let o =
        su11(&["verify", "--family", "ho", "--omega", "1", "--L", "0", "--alpha", "0", "--nmax", "5", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["tolerances"]["eigen_residual"].as_f64(), Some(1e-8));
}

#[test]
fn verify_fails_with_impossible_tolerance() {
    let o = su11(&["verify", "--family", "ho", "--omega", "1", "--L", "0.5", "--alpha", "0.3", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["pass"], Value::Bool(false));
}

#[test]
fn oscillator_to_coulomb_parameters() {
    let o = su11(&["map", "--from", "ho", "--to", "coulomb", "--omega", "1", "--L", "2.5", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["target"]["lcal"].as_f64(), Some(1.0));
    assert_eq!(v["member"].as_u64(), Some(1));
    assert_eq!(v["source_energy"].as_f64(), Some(6.0));
}

#[test]
fn hierarchy_shares_the_oscillator_energy() {
    let o = su11(&["hierarchy", "--family", "ho", "--omega", "1", "--to", "morse", "--nmax", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let energies: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(energies.len(), 4);
    assert!(energies.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn oracle_compare_agrees() {
    let o = su11(&["oracle-compare", "--family", "coulomb", "--Z", "1", "--alpha", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["negative_eigenvalues"].as_u64(), Some(v["levels"].as_array().unwrap().len() as u64));
}

#[test]
fn state_table_has_requested_rows() {
    let o = su11(&["state", "--family", "ho", "--omega", "1", "--n", "2", "--grid-count", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("q,value,d1,d2"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["spectrum", "--family", "ho", "--omega", "1", "--bogus"][..],
        &["verify", "--family", "ho", "--omega", "1", "--format", "csv"],
        &["spectrum", "--family", "ho", "--omega", "-1"],
        &["spectrum", "--family", "morse", "--A", "2.5"],
        &["spectrum", "--family", "ho", "--omega", "1", "--alpha", "0.5", "--L", "-1"],
        &["map", "--from", "morse", "--to", "ho", "--A", "2.5", "--B", "1"],
    ] {
        let o = su11(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["verify", "--family", "coulomb", "--Z", "1", "--alpha", "0.1"];
    assert_eq!(su11(&args).stdout, su11(&args).stdout);
}
