use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cable-order"));
    cmd.env_remove("CABLE_ORDER_SCRIPT_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn present_examples() {
    let out = run(&["present", "--x", "2", "--y", "3", "--p", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mu = doc["named_elements"].as_array().unwrap().iter().find(|n| n["name"] == "mu").unwrap();
    assert_eq!(mu["word"], "b^-1 a");
    assert_eq!(code(&run(&["present", "--x", "2", "--y", "4"])), 1);
    assert_eq!(code(&run(&["present", "--x", "2", "--y", "3", "--p", "2", "--q", "10"])), 1);
    assert_eq!(code(&run(&["present", "--x", "2", "--y", "3", "--p", "2", "--q", "13", "--general"])), 0);
}

#[test]
fn certify_exit_codes() {
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--beta", "1"])), 0);
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--slope", "43/2"])), 0);
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--slope", "1/1"])), 1);
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "1", "--beta", "1"])), 1);
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--q", "12", "--beta", "1"])), 1);
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "2"])), 1);
    assert_eq!(code(&run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--slope", "abc"])), 1);
    let out = run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--slope", "20", "--experimental", "--format", "json"]);
    assert_eq!(code(&out), 2);
    let inc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(inc["survivors"].as_array().unwrap().iter().any(|s| s == &serde_json::json!({"a": "pos", "b": "pos", "t": "pos"})));
}

#[test]
fn human_output_lists_all_rows() {
    let out = run(&["certify", "--x", "2", "--y", "3", "--p", "2", "--beta", "1"]);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("a:")).count(), 27);
    assert!(text.contains("a:pos b:pos t:pos  eq12: neg vs pos"));
}

#[test]
fn certify_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let out = run(&["certify", "--x", "3", "--y", "5", "--p", "3", "--slope", "263/2", "--json", p, "--format", "json"]);
    assert_eq!(code(&out), 0);
    // stdout and file carry the same bytes, and repeated runs are identical
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&out).trim_end(), file);
    let again = run(&["certify", "--x", "3", "--y", "5", "--p", "3", "--slope", "263/2", "--format", "json"]);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(code(&run(&["replay", p])), 0);

    let flipped = file.replacen("\"lhs\": \"neg\"", "\"lhs\": \"pos\"", 1);
    assert_ne!(flipped, file);
    std::fs::write(&path, flipped).unwrap();
    assert_eq!(code(&run(&["replay", p])), 2);

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&run(&["replay", p])), 1);
    assert_eq!(code(&run(&["replay", dir.path().join("missing.json").to_str().unwrap()])), 1);
}

#[test]
fn verify_identities_reports() {
    let out = run(&["verify-identities", "--x", "3", "--y", "5", "--p", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("2g - 1 = 43"), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert_eq!(code(&run(&["verify-identities", "--x", "2", "--y", "3", "--p", "2"])), 0);
}

fn corrupt_fixture(dir: &Path) {
    let text = include_str!("../scripts/lemma_same_sign.json").replace("\"result\": \"a^{x*p}\"", "\"result\": \"a^{x*p+1}\"");
    std::fs::write(dir.join("lemma_same_sign.json"), text).unwrap();
}

#[test]
fn corrupted_script_fixture_fails_with_step_index() {
    let dir = tempfile::tempdir().unwrap();
    corrupt_fixture(dir.path());
    let out = bin()
        .args(["verify-identities", "--x", "2", "--y", "3", "--p", "2"])
        .env("CABLE_ORDER_SCRIPT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("FAIL script_lemma_same_sign") && text.contains("step 1"), "{text}");
    let out = bin()
        .args(["certify", "--x", "2", "--y", "3", "--p", "2", "--beta", "1"])
        .env("CABLE_ORDER_SCRIPT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("step 1"));
}

#[test]
fn sweep_writes_named_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("certs");
    let out = run(&[
        "sweep",
        "--grid",
        "x=2..5,y=2..5,p=2..3,beta=1..5",
        "--out",
        out_dir.to_str().unwrap(),
        "--jobs",
        "4",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    // coprime x < y in 2..5: (2,3) (2,5) (3,4) (3,5) (4,5)
    assert!(stdout(&out).contains("50 points: 50 certified, 0 inconclusive, 0 failed"));
    let name = out_dir.join("cert_x3_y4_p2_beta5.json");
    assert_eq!(code(&run(&["replay", name.to_str().unwrap()])), 0);
    assert!(out_dir.join("sweep.log").exists());
    let cert = std::fs::read_to_string(&name).unwrap();
    assert!(!cert.contains("seconds"));

    let out = run(&["sweep", "--grid", "x=2,y=3,p=2,mode=slope,beta=1..3", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(out_dir.join("cert_x2_y3_p2_slope43_2.json").exists());
    assert!(out_dir.join("cert_x2_y3_p2_slope65_3.json").exists());
}

#[test]
fn sweep_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(code(&run(&["sweep", "--grid", "x=3..2,y=2..5,p=2,beta=1", "--out", out])), 1);
    let res = run(&["sweep", "--grid", "x=2,y=3,p=1..2,beta=1", "--out", out]);
    assert_eq!(code(&res), 1);
    let text = stdout(&res);
    assert!(text.contains("unsupported") && text.contains("1 failed"), "{text}");
    assert!(dir.path().join("cert_x2_y3_p2_beta1.json").exists());
    assert_eq!(code(&run(&["sweep", "--grid", "x=2,y=3", "--out", out])), 1);
}
