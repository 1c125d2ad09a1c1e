use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivalg"))
        .args(args)
        .env_remove("DERIVALG_JSON")
        .output()
        .expect("binary runs")
}

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(data("report.schema.json")).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

/// Runs with `--json`, checks the exit code and validates against the schema.
fn json(args: &[&str], code: i32) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let schema = schema();
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("schema violations: {msgs:?}");
    }
    v
}

fn text(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn example2_jacobian_is_nilpotent_with_zero_divergences() {
    let v = json(&["check-jacobian", &data("example2.map")], 0);
    let r = &v["results"];
    assert_eq!(r["nilpotent"], true);
    assert!(r["index"].as_u64().unwrap() <= 4);
    for d in r["right_power_divergences"].as_array().unwrap() {
        assert_eq!(d["divergence"], "0");
    }
    assert_eq!(r["divergence_criterion_agrees"], true);
}

#[test]
fn example1_jacobian_reports_first_nonzero_trace() {
    let v = json(&["check-jacobian", &data("example1.map")], 0);
    let r = &v["results"];
    assert_eq!(r["nilpotent"], false);
    assert_eq!(r["first_nonzero_trace"], 2);
    // -4 w z^2 with w = x^2 - yz
    assert_eq!(r["power_traces"][1]["trace"], "-4*x^2*z^2 + 4*y*z^3");
}

#[test]
fn identity_trace_is_dimension() {
    let v = json(&["check-jacobian", &data("identity.map")], 0);
    assert_eq!(v["results"]["nilpotent"], false);
    assert_eq!(v["results"]["power_traces"][0]["trace"], "3");
}

#[test]
fn example1_left_and_right_powers() {
    let left = json(&["powers", &data("example1.map"), "--side", "left", "--max", "6"], 0);
    assert_eq!(left["results"]["index"], 3);
    assert_eq!(left["results"]["powers"][1]["tuple"][1], "2*x^4*z - 4*x^2*y*z^2 + 2*y^2*z^3");
    let right = json(&["powers", &data("example1.map"), "--side", "right", "--max", "8"], 0);
    assert_eq!(right["results"]["index"], Value::Null);
    assert_eq!(right["results"]["powers"].as_array().unwrap().len(), 8);
}

#[test]
fn example2_right_index_is_four() {
    let v = json(&["powers", &data("example2.map"), "--max", "6"], 0);
    assert_eq!(v["results"]["index"], 4);
}

#[test]
fn powers_rejects_small_max() {
    let out = run(&["powers", &data("example2.map"), "--max", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn example2_routes_agree() {
    let v = json(&["formal-inverse", &data("example2.map"), "--order", "4", "--route", "all"], 0);
    let r = &v["results"];
    assert_eq!(r["agreement"], true);
    for route in ["direct", "psi", "reduced"] {
        assert_eq!(r[format!("{route}_inverts")], true);
    }
    assert_eq!(r["direct"][2]["F"][0], "y*t^6");
}

#[test]
fn first_coefficient_is_minus_f() {
    let v = json(&["formal-inverse", &data("example1.map"), "--order", "1", "--route", "psi"], 0);
    assert_eq!(v["results"]["psi"][0]["F"], serde_json::json!(["-x^2*z + y*z^2", "-2*x^3 + 2*x*y*z", "0"]));
}

#[test]
fn linear_nilpotent_inverse_stops_after_first_term() {
    let v = json(&["formal-inverse", &data("linear_nilpotent.map"), "--order", "5"], 0);
    let direct = v["results"]["direct"].as_array().unwrap();
    assert_eq!(direct[0]["F"], serde_json::json!(["-x2", "0"]));
    for c in &direct[1..] {
        assert_eq!(c["F"], serde_json::json!(["0", "0"]));
    }
}

#[test]
fn left_normed_variant_is_reported() {
    let v = json(&["formal-inverse", &data("example2.map"), "--order", "3", "--left-normed"], 0);
    assert!(v["results"]["left_normed_variant"].is_array());
    assert!(v["results"]["left_normed_matches_direct"].is_boolean());
}

#[test]
fn nsymm_expand_psi3() {
    let v = json(&["nsymm", "expand", "psi", "3"], 0);
    assert_eq!(v["results"]["text"], "Psi3 = 3*Z3 - 2*Z1*Z2 - Z2*Z1 + Z1*Z1*Z1");
    assert_eq!(v["results"]["terms"][0], serde_json::json!({"word": [3], "coeff": "3"}));
}

#[test]
fn nsymm_lie_express_psi4() {
    let v = json(&["nsymm", "lie-express", "psi", "4"], 0);
    assert_eq!(
        v["results"]["text"],
        "Psi4 = Theta4 + 2/3*[Theta3, Theta1] + 1/6*[[Theta2, Theta1], Theta1]"
    );
}

#[test]
fn nsymm_coproduct_z2_has_three_terms() {
    let v = json(&["nsymm", "coproduct", "z", "2"], 0);
    assert_eq!(v["results"]["text"], "Delta(Z2) = Z2 (x) 1 + Z1 (x) Z1 + 1 (x) Z2");
    assert_eq!(v["results"]["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn nsymm_convert_and_antipode() {
    let v = json(&["nsymm", "convert", "z", "2", "--to", "psi"], 0);
    assert_eq!(v["results"]["text"], "Z2 = 1/2*Psi2 + 1/2*Psi1*Psi1");
    let s = json(&["nsymm", "antipode", "u", "3"], 0);
    assert_eq!(s["results"]["antipode_negates"], true);
}

#[test]
fn nsymm_errors_are_usage_errors() {
    assert_eq!(run(&["nsymm", "expand", "psi", "9", "--bound", "8"]).status.code(), Some(1));
    assert_eq!(run(&["nsymm", "lie-express", "z", "2"]).status.code(), Some(1));
    assert_eq!(run(&["nsymm", "expand", "omega", "2"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn divergence_audits() {
    let e2 = json(&["divergence-audit", &data("example2.map")], 0);
    assert_eq!(e2["results"]["all_zero"], true);
    assert_eq!(e2["results"]["closure"]["stabilized"], true);
    let e1 = json(&["divergence-audit", &data("example1.map"), "--depth", "1"], 0);
    assert_eq!(e1["results"]["all_zero"], false);
    assert_eq!(e1["results"]["first_nonzero"]["label"], "D^[2]");
    let zero = json(&["divergence-audit", &data("zero.map")], 0);
    assert_eq!(zero["results"]["closure"]["dim"], 0);
}

#[test]
fn closure_specializes_example2() {
    let v = json(&["closure", &data("example2.map"), "--specialize", "t=1"], 0);
    let s = &v["results"]["specialized"];
    assert_eq!(s["solvable"], false);
    assert_eq!(v["results"]["specialized_matches_realization"], true);
    assert_eq!(run(&["closure", &data("example2.map"), "--specialize", "q=1"]).status.code(), Some(1));
}

#[test]
fn verify_paper_passes() {
    let v = json(&["verify-paper"], 0);
    assert_eq!(v["results"]["failed"], 0);
    assert_eq!(v["consistent"], true);
}

#[test]
fn output_is_deterministic() {
    let a = text(&["divergence-audit", &data("example2.map")]);
    let b = text(&["divergence-audit", &data("example2.map")]);
    assert_eq!(a, b);
}

#[test]
fn env_overrides_flag_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_derivalg"))
        .args(["formal-inverse", &data("linear_nilpotent.map"), "--json"])
        .env("DERIVALG_ORDER", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inputs"]["order"], 2);
}

#[test]
fn text_polynomials_reparse() {
    let out = text(&["powers", &data("example2.map"), "--max", "4"]);
    let line = out.lines().find(|l| l.contains("x*t^4")).expect("D^[2] listed");
    let list = line.trim().trim_start_matches("tuple: ");
    let inner = list.trim_start_matches('[').trim_end_matches(']');
    for piece in inner.split(", ") {
        let p = derivalg::parse_polynomial(piece, &["x", "y", "s", "t"]).unwrap();
        assert_eq!(p.format(&["x", "y", "s", "t"]), piece);
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = std::env::temp_dir().join(format!("derivalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.map");
    std::fs::write(&path, "vars: x, y\nf1 = x*\nf2 = 0\n").unwrap();
    let out = run(&["check-jacobian", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column"), "{err}");
    let _ = std::fs::remove_dir_all(&dir);
}
