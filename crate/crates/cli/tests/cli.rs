use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn qcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoh"))
        .args(args)
        .env_remove("QCOH_FORMAT")
        .env_remove("QCOH_CUTOFF")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = qcoh(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("qcoh-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_passes_on_the_clifford_fixture() {
    let (code, out, _) = run(&["check", &path("clifford1.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all checks passed"));
    let (code, out, _) = run(&["check", &path("circle_floer.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(2)*T^1/2"));
}

#[test]
fn check_fails_on_a_broken_unit() {
    let text = std::fs::read_to_string(fixture("two_factors.json")).unwrap();
    let broken = text.replacen("\"1X\": \"(1)*T^0\"", "\"1X\": \"(2)*T^0\"", 1);
    assert_ne!(broken, text);
    let (code, out, _) = run(&["check", &scratch("broken.json", &broken)]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("violations"));
}

#[test]
fn short_length_is_not_stabilized() {
    let (code, out, _) = run(&["hh", "--length", "2", &path("clifford1.json")]);
    assert_eq!(code, 2);
    assert!(out.contains("not stabilized"));
    let (code, out, _) = run(&["hh", &path("clifford2.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("HH_• has dimension 1"));
}

#[test]
fn crit_prints_three_blow_up_rows() {
    let (code, out, _) = run(&["crit", &path("blowup.pot")]);
    assert_eq!(code, 0, "{out}");
    for value in ["(5/2 + 5/2*s5)*T^1", "(5/2 - 5/2*s5)*T^1", "(-3)*T^1"] {
        assert_eq!(out.matches(value).count(), 1, "{value} in\n{out}");
    }
    assert_eq!(out.matches("morse").count(), 3);
}

#[test]
fn crit_machine_format_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcoh"))
        .args(["crit", &path("circle.pot")])
        .env("QCOH_FORMAT", "machine")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn blowup_output_is_stable() {
    let (code, first, _) = run(&["blowup", "--assert-identities"]);
    assert_eq!(code, 0, "{first}");
    assert!(first.starts_with("blowup: semisimple with 7 field factors\n"));
    assert_eq!(first.matches("FAIL").count(), 0);
    let table = first.split("field factors of QH•(X)").nth(1).unwrap();
    assert_eq!(table.matches("(-3)*T^1").count(), 5);
    let (_, second, _) = run(&["blowup", "--assert-identities"]);
    assert_eq!(first, second);
    let (_, from_file, _) = run(&["blowup", "--assert-identities", &path("blowup.pot")]);
    assert_eq!(first, from_file);
}

#[test]
fn too_few_spheres_do_not_close_the_ledger() {
    let (code, out, _) = run(&["blowup", "--spheres", "2"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("not closed"));
}

#[test]
fn splitgen_certificates_replay() {
    let (code, cert, _) = run(&["--format", "machine", "splitgen", &path("sphere.json"), "--sub", "S", "--target", "S"]);
    assert_eq!(code, 0, "{cert}");
    let file = scratch("cert.json", &cert);
    let (code, out, _) = run(&["splitgen", &path("sphere.json"), "--target", "S", "--replay", &file]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("witness replays"));
    let forged = scratch("forged.json", &cert.replace("(1/6)*T^0", "(1/5)*T^0"));
    let (code, _, _) = run(&["splitgen", &path("sphere.json"), "--target", "S", "--replay", &forged]);
    assert_eq!(code, 1);
}

#[test]
fn orthogonal_factors_do_not_generate() {
    let (code, out, _) = run(&["splitgen", &path("two_factors.json"), "--sub", "X", "--target", "Y"]);
    assert_eq!(code, 1);
    assert!(out.contains("not split-generated"));
}

#[test]
fn toric_counts_and_symmetry() {
    let (code, out, _) = run(&["toric", &path("cp2.poly"), "--zeta", "3:1,1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("3 Morse critical points, dim H•(X) = 3"));
    let (code, _, _) = run(&["toric", &path("cp2.poly"), "--zeta", "3:1,0"]);
    assert_eq!(code, 1);
    let (code, out, _) = run(&["toric", &path("cp1.poly")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn errors_exit_with_three() {
    let (code, _, err) = run(&["check", &scratch("bad.json", "{\n  \"kind\": \"category\",\n  oops }")]);
    assert_eq!(code, 3);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = run(&["crit", &scratch("bad.pot", "W = y +\n  * 3")]);
    assert_eq!(code, 3);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = run(&["--slack", "5", "crit", &path("circle.pot")]);
    assert_eq!(code, 3);
}
