use std::path::Path;
use std::process::{Command, Output};

use scalediff::fixturegen::{generate_case, BugInjection, FixtureSpec};
use scalediff::pipeline::Report;
use scalediff::{write_snapshot, Category, Verdict};

fn scalediff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scalediff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_case(dir: &Path, injections: Vec<BugInjection>) -> (String, String) {
    let mut spec = FixtureSpec::new(42);
    spec.injections = injections;
    let c = generate_case("c", &spec).unwrap();
    let (a, b) = (dir.join("default"), dir.join("scaled"));
    write_snapshot(&c.default, &a).unwrap();
    write_snapshot(&c.scaled, &b).unwrap();
    (a.display().to_string(), b.display().to_string())
}

#[test]
fn detect_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_case(&dir.path().join("clean"), vec![]);
    let out = scalediff(&["detect", &a, &b]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.verdict, Verdict::Clean);

    let (a, b) = write_case(
        &dir.path().join("buggy"),
        vec![BugInjection::new(Category::ComponentCropping)],
    );
    assert_eq!(scalediff(&["detect", &a, &b]).status.code(), Some(1));

    let missing = dir.path().join("nothing").display().to_string();
    let out = scalediff(&["detect", &missing, &b]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn detect_text_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_case(
        dir.path(),
        vec![BugInjection::new(Category::ContentCropping)],
    );
    let out = scalediff(&["detect", &a, &b, "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verdict: Buggy"), "{text}");
    assert!(text.contains("ContentCropping"));

    let file = dir.path().join("r.json");
    let out = scalediff(&["detect", &a, &b, "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(report.verdict, Verdict::Buggy);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let f = &json["findings"][0];
    for key in ["kind", "category", "views", "evidence"] {
        assert!(!f[key].is_null(), "finding lacks {key}");
    }
    assert!(f["views"]["default"].is_array() && f["views"]["scaled"].is_array());
}

#[test]
fn detect_reads_a_config() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = write_case(dir.path(), vec![]);
    let good = dir.path().join("c.toml");
    std::fs::write(&good, "ssim_threshold = 0.5\n").unwrap();
    let out = scalediff(&["detect", &a, &b, "--config", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "ssim_threshold = \"high\"\n").unwrap();
    let out = scalediff(&["detect", &a, &b, "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"seed": 3, "clean_cases": 2, "buggy_cases": 2}"#).unwrap();
    let corpus = dir.path().join("corpus");
    let out = scalediff(&[
        "generate",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        corpus.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(corpus.join("case-004/scaled/tree.json").exists());

    let labels = corpus.join("labels.json");
    let out = scalediff(&[
        "evaluate",
        corpus.to_str().unwrap(),
        "--labels",
        labels.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(m["cases"], 4);
    assert!(m["page"]["bug"]["precision"].is_number());
    assert!(m["view"]["confusion"]["fn"].is_number());
}
