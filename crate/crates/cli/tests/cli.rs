use std::process::{Command, Output};

fn tiltstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltstab")).args(args).output().expect("binary runs")
}

#[test]
fn exports_are_byte_identical_across_runs() {
    for args in [
        &["explore", "--depth", "2", "--format", "json"][..],
        &["explore", "--depth", "2", "--format", "dot"],
        &["walls"],
    ] {
        let a = tiltstab(args);
        let b = tiltstab(args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn dot_export_colours_the_three_heart_types() {
    let out = String::from_utf8(tiltstab(&["explore", "--depth", "2", "--format", "dot"]).stdout).unwrap();
    for colour in ["white", "grey", "black"] {
        assert!(out.contains(&format!("fillcolor={colour}")), "{colour}");
    }
    assert!(!out.contains("fillcolor=red"));
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    assert_eq!(tiltstab(&["verify", "core"]).status.code(), Some(0));
    assert_eq!(tiltstab(&["--builtin", "nope", "walls"]).status.code(), Some(2));
    assert_eq!(tiltstab(&["heart", "tilt", "--path", "Q0"]).status.code(), Some(2));
    // C_x is not spherical
    assert_eq!(tiltstab(&["twist", "--simple", "1"]).status.code(), Some(3));
    assert_eq!(tiltstab(&["--builtin", "kronecker", "heart", "indecomposables"]).status.code(), Some(3));
}

#[test]
fn missing_input_file_is_reported() {
    let out = tiltstab(&["--input", "/nonexistent/algebra.json", "algebra", "check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/algebra.json"));
}

#[test]
fn hn_accepts_negative_rational_charges() {
    let out = tiltstab(&["hn", "--charge", "-1/2:1,1:1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}
