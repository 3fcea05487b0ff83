use std::process::{Command, Output};

use coulomb_core::TruncatedSeries;

fn coulomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coulomb"))
        .args(args)
        .env_remove("COULOMB_MAX_RADIUS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = coulomb(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn hilbert_examples() {
    assert_eq!(stdout(&["hilbert", "--spec", "sqed:2", "--order", "6"]), "1 + 3*t^2 + 5*t^4");
    assert_eq!(stdout(&["hilbert", "--spec", "trivial", "--order", "5"]), "1");
    let json = stdout(&["hilbert", "--spec", "jordan:2", "--order", "8", "--kappa", "0", "--format", "json"]);
    let series = TruncatedSeries::from_json_str(&json).unwrap();
    assert_eq!(series, coulomb_core::monopole::hilb2_closed_form(0, 8));
}

#[test]
fn costalk_examples() {
    assert_eq!(
        stdout(&["costalk", "--spec", "sqed:2", "--lambda", "1,0", "--order", "4", "--generators"]),
        "x*t + x^-1*t + x^3*t^3 + x^-3*t^3"
    );
    let json = stdout(&["costalk", "--spec", "jordan:2", "--kappa", "1", "--order", "20", "--format", "json"]);
    let series = TruncatedSeries::from_json_str(&json).unwrap();
    assert_eq!(series, coulomb_core::monopole::hilb2_closed_form(1, 20));
    assert_eq!(
        stdout(&["costalk", "--spec", "sqed:3", "--kappa", "0", "--order", "9"]),
        stdout(&["hilbert", "--spec", "sqed:3", "--order", "9"])
    );
}

#[test]
fn klein_char() {
    assert_eq!(stdout(&["klein-char", "--rank", "2", "--lambda", "1,0", "--order", "2"]), "x*t + x^-1*t");
}

#[test]
fn ring_examples() {
    assert_eq!(
        stdout(&["ring", "--spec", "two-node:1,1", "--expr", "z_j*z_i"]),
        "(w_i - w_j)*r[-1,-1;0]"
    );
    assert_eq!(stdout(&["ring", "--spec", "two-node:2,3", "--expr", "r0"]), "1*r[0,0;0]");
    assert_eq!(
        stdout(&["ring", "--spec", "two-node:1,1", "--expr", "y_j*z_j"]),
        "(w_i - w_j)*w_j*r[0,0;0]"
    );
    let formal = stdout(&["ring", "--spec", "sqed:1", "--expr", "r[1;0]*r[-1;0]", "--flavor-formal"]);
    assert_eq!(formal, "(w - f_1)*r[0;0]");
    let json = stdout(&["ring", "--spec", "two-node:1,1", "--expr", "z_j*z_i", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["terms"][0]["gauge"], serde_json::json!([-1, -1]));
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "--suite", "monopole-hilbert", "--l", "0..5", "--order", "30"][..],
        &["verify", "--suite", "ring-rmn", "--wj", "1..3", "--wi", "1..3", "--m", "-4..4", "--n", "-4..4"][..],
        &["verify", "--suite", "sl3-example"][..],
    ] {
        let out = coulomb(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn json_output_is_byte_deterministic() {
    let args = ["verify", "--suite", "klein-iso", "--rank", "1..3", "--format", "json"];
    let a = coulomb(&args);
    let b = coulomb(&args);
    assert_eq!(a.stdout, b.stdout);
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(value["passed"], serde_json::json!(true));
}

#[test]
fn exit_codes() {
    assert_eq!(coulomb(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(coulomb(&["hilbert", "--spec", "sqed:x"]).status.code(), Some(2));
    assert_eq!(coulomb(&["ring", "--spec", "jordan:2", "--expr", "r0"]).status.code(), Some(2));
    assert_eq!(coulomb(&["ring", "--spec", "two-node:1,1", "--expr", "y_j*"]).status.code(), Some(2));
    let pure = r#"{"factors":[2],"flavor_rank":0,"matter":[]}"#;
    assert_eq!(coulomb(&["hilbert", "--spec", pure]).status.code(), Some(3));
    let capped = Command::new(env!("CARGO_BIN_EXE_coulomb"))
        .args(["hilbert", "--spec", "sqed:1", "--order", "20"])
        .env("COULOMB_MAX_RADIUS", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let bad_env = Command::new(env!("CARGO_BIN_EXE_coulomb"))
        .args(["hilbert", "--spec", "sqed:1"])
        .env("COULOMB_MAX_RADIUS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}
