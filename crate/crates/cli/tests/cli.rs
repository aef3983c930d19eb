use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sschr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sschr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn scan_writes_one_certificate_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certs");
    let run = sschr(&["scan", "s11", "--d", "-1/2", "--m", "1", "--max-level", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let files = json_files(&out);
    assert_eq!(files.len(), 1);

    let check = sschr(&["verify", files[0].to_str().unwrap()]);
    assert_eq!(code(&check), 0);
    assert!(stdout(&check).contains("verified"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let run = sschr(&["scan", "s11", "--d", "-1/2", "--m", "1", "--max-level", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let path = &json_files(dir.path())[0];
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    doc["vector"][0]["coeff"]["even"] = serde_json::Value::String("3".into());
    fs::write(path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let check = sschr(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&check), 1);
    assert!(stdout(&check).contains("rejected"));
}

#[test]
fn unreadable_certificate_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&sschr(&["verify", path.to_str().unwrap()])), 2);
    assert_eq!(code(&sschr(&["verify", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn validate_reports_all_pass() {
    let run = sschr(&["validate", "s22hat"]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("all checks pass"));
}

#[test]
fn invalid_inputs_exit_with_two() {
    // unknown algebra, float parameter, missing parameter, foreign parameter, massless
    assert_eq!(code(&sschr(&["validate", "s33"])), 2);
    assert_eq!(code(&sschr(&["scan", "s11", "--d", "0.5", "--m", "1"])), 2);
    assert_eq!(code(&sschr(&["scan", "s11", "--d", "1/2"])), 2);
    assert_eq!(code(&sschr(&["scan", "s11", "--d", "1/2", "--m", "1", "--r", "0"])), 2);
    assert_eq!(code(&sschr(&["scan", "s11", "--d", "1/2", "--m", "0"])), 2);
    assert_eq!(code(&sschr(&["closed-form", "sch1", "--d", "1", "--m", "1"])), 2);
    assert_eq!(code(&sschr(&["closed-form", "s12", "--d", "1", "--m", "1", "--r", "0"])), 2);
    assert_eq!(code(&sschr(&["scan", "s11", "--parametric", "--max-level", "9"])), 2);
}

#[test]
fn output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let run = sschr(&["scan", "s21", "--d", "0", "--m", "3/2", "--j", "1", "--max-level", "4", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(code(&run), 0);
    }
    let fa = json_files(a.path());
    let fb = json_files(b.path());
    assert_eq!(fa.len(), 1);
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap());
    }
}

#[test]
fn closed_form_and_quotient_scan() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("cf.json");
    let run = sschr(&["closed-form", "s12", "--d", "3/2", "--m", "1", "--r", "0", "--out", report.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["verdict"], "singular");
    assert_eq!(doc["exponent"], 1);

    let cert = dir.path().join("cert.json");
    fs::write(&cert, serde_json::to_string_pretty(&doc["certificate"]).unwrap()).unwrap();
    assert_eq!(code(&sschr(&["verify", cert.to_str().unwrap()])), 0);
    let q = sschr(&["quotient-scan", cert.to_str().unwrap(), "--max-level", "6"]);
    assert_eq!(code(&q), 0);
    assert!(stdout(&q).contains("0 singular vector(s)"));
}

#[test]
fn parametric_scan_and_gram() {
    let run = sschr(&["scan", "s11", "--parametric", "--max-level", "1"]);
    assert_eq!(code(&run), 0);
    assert!(stdout(&run).contains("2*d + 1 = 0"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gram.json");
    let run = sschr(&["gram", "s12", "--parametric", "--weight", "0,1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc[0]["rank"], 1);
    assert_eq!(doc[0]["basis"][0], "X+");
}

#[test]
fn prop_reproduces_s21() {
    let run = sschr(&["prop", "s21", "--d", "0", "--m", "1", "--j", "0", "--quotient-level", "5"]);
    assert_eq!(code(&run), 0, "{}", stdout(&run));
    assert!(stdout(&run).contains("reproduced"));
}

#[test]
fn algebras_lists_the_catalog() {
    let run = sschr(&["algebras"]);
    assert_eq!(code(&run), 0);
    let text = stdout(&run);
    for name in ["sch1", "sch2", "s11", "s12", "s21", "s22", "s22hat"] {
        assert!(text.contains(name));
    }
}
