use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lyaprof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lyaprof")).args(args).output().unwrap()
}

fn json_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

#[test]
fn profile_rule_150() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "--json", "profile", "--rule", "150", "--width", "201", "--steps", "100", "--seed", "1", "--out", d, "--svg",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json_stdout(&out);
    assert_eq!(summary["cone_width"], 201);
    let doc = read_json(&dir.path().join("rule150_seed1.json"));
    assert_eq!(doc["profile"]["normalized"]["0"], 1.0);
    assert_eq!(doc["max_normalized"], 1.0);
    let csv = fs::read_to_string(dir.path().join("rule150_seed1.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("offset,raw_lambda,normalized_lambda"));
    assert_eq!(csv.lines().count(), 202);
    assert!(fs::read_to_string(dir.path().join("rule150_seed1.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn profile_rule_90_near_log2_over_log3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "profile", "--rule", "90", "--width", "4001", "--steps", "2000", "--seed", "7", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = read_json(&dir.path().join("rule090_seed7.json"));
    let max = doc["max_normalized"].as_f64().unwrap();
    assert!((max - 2f64.ln() / 3f64.ln()).abs() < 0.02, "{max}");
}

#[test]
fn invalid_flags_exit_1_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let d = out_dir.to_str().unwrap();
    for args in [
        vec!["profile", "--rule", "300", "--out", d],
        vec!["profile", "--rule", "30", "--width", "2", "--out", d],
        vec!["profile", "--rule", "30", "--steps", "0", "--out", d],
        vec!["profile", "--rule", "30", "--width", "11", "--defect", "11", "--out", d],
        vec![
            "profile", "--rule", "30", "--width", "11", "--defect", "5..3", "--out", d,
        ],
        vec!["profile", "--rule", "30", "--boundary", "mirror", "--out", d],
        vec!["profile", "--rule", "30", "--backend", "float", "--out", d],
        vec!["heatmap", "--rule", "62", "--stride", "0", "--out", d],
        vec!["batch", "--rules", "30", "--seeds", "", "--out", d],
        vec!["batch", "--rules", "30,256", "--out", d],
        vec!["profile", "--out", d],
        vec!["frobnicate"],
    ] {
        let out = lyaprof(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert!(!out_dir.exists());
    let out = lyaprof(&["profile", "--rule", "300"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
    let out = lyaprof(&["heatmap", "--rule", "62", "--stride", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no heatmap requested"));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(lyaprof(&["--help"]).status.code(), Some(0));
    assert_eq!(lyaprof(&["--version"]).status.code(), Some(0));
    assert_eq!(lyaprof(&["profile", "--help"]).status.code(), Some(0));
}

#[test]
fn heatmap_rule_62_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "heatmap", "--rule", "62", "--width", "1001", "--steps", "500", "--seed", "3", "--format", "pgm", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let pgm = fs::read(dir.path().join("rule062_seed3_heatmap.pgm")).unwrap();
    let header = b"P5\n1001 500\n255\n";
    assert!(pgm.starts_with(header));
    assert_eq!(pgm.len(), header.len() + 1001 * 500);
    let csv = fs::read_to_string(dir.path().join("rule062_seed3_heatmap.csv")).unwrap();
    assert_eq!(csv.lines().count(), 501);
}

#[test]
fn heatmap_svg_format() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "heatmap", "--rule", "150", "--width", "41", "--steps", "15", "--format", "svg", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(dir.path().join("rule150_seed1_heatmap.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn batch_writes_manifest_and_identical_105_150() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "--json", "batch", "--rules", "150,105", "--seeds", "5", "--width", "201", "--steps", "100", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["failed"], 0);
    let a = read_json(&dir.path().join("rule105_seed5.json"));
    let b = read_json(&dir.path().join("rule150_seed5.json"));
    assert_eq!(a["profile"], b["profile"]);
    let manifest = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["runs"].as_array().unwrap().len(), 2);
}

#[test]
fn batch_all88() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "batch", "--rules", "all88", "--seeds", "1", "--width", "401", "--steps", "200", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let results = fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| {
            let name = e.as_ref().unwrap().file_name().into_string().unwrap();
            name.starts_with("rule") && name.ends_with(".json")
        })
        .count();
    assert_eq!(results, 88);
}

#[test]
fn batch_reports_partial_failure() {
    // A directory squatting on one result path makes only that run fail.
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("rule090_seed1.json")).unwrap();
    let d = dir.path().to_str().unwrap();
    let out = lyaprof(&[
        "batch", "--rules", "30,90", "--seeds", "1", "--width", "41", "--steps", "10", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(3));
    let manifest = read_json(&dir.path().join("manifest.json"));
    let statuses: Vec<&str> = manifest["runs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    assert_eq!(statuses, ["ok", "failed"]);
    assert!(dir.path().join("rule030_seed1.json").is_file());
}

#[test]
fn batch_unwritable_output_is_a_runtime_failure() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, b"").unwrap();
    let out = lyaprof(&[
        "batch",
        "--rules",
        "30",
        "--seeds",
        "1",
        "--width",
        "41",
        "--steps",
        "10",
        "--out",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equiv_bound_and_oracle_check() {
    let out = lyaprof(&["equiv", "--rule", "110"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("{110, 124, 137, 193}"));
    assert!(stdout(&out).contains("minimal representative: 110"));
    let out = lyaprof(&["--json", "equiv", "--rule", "137"]);
    assert_eq!(json_stdout(&out)["minimal_representative"], 110);

    let out = lyaprof(&["bound", "--steps", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("coefficient: 19"));
    assert!(stdout(&out).contains("0.73611"));
    let out = lyaprof(&["--json", "bound", "--steps", "4"]);
    assert_eq!(json_stdout(&out)["central_coefficient"], "19");

    let out = lyaprof(&["oracle-check", "--steps", "6", "--width", "31", "--seeds", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("256/256 rules consistent"));
}

#[test]
fn runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let d = dir.path().to_str().unwrap();
        let out = lyaprof(&[
            "profile", "--rule", "110", "--width", "301", "--steps", "150", "--seed", "42", "--out", d,
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for name in ["rule110_seed42.json", "rule110_seed42.csv"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap()
        );
    }
}
