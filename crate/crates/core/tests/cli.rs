use std::path::Path;
use std::process::{Command, Output};

fn sonoscaffold(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sonoscaffold"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

const SERIES: &str = r#"{
    "base": {
        "width": 160, "height": 100, "cx": 79.5, "cy": 49.5, "a": 60, "b": 35,
        "background-mean": 170, "background-noise": 0.15,
        "scaffold-mean": 70, "scaffold-noise": 0.15, "seed": 3
    },
    "steps": 3,
    "shrink": 0.9,
    "mean-increment": 10
}"#;

#[test]
fn phantom_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("series.json"), SERIES).unwrap();
    let out = sonoscaffold(&["phantom", "--spec", "series.json", "--out", "set"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let set = dir.path().join("set");
    for f in [
        "phantom_000.pgm",
        "phantom_002_mask.pgm",
        "manifest.json",
        "analyze.json",
    ] {
        assert!(set.join(f).is_file(), "{f} missing");
    }

    let out = sonoscaffold(
        &[
            "analyze",
            "--config",
            "set/analyze.json",
            "--emit-intermediates",
            "--chart",
            "area",
            "--chart",
            "cv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = set.join("report");
    let csv = std::fs::read_to_string(report.join("features.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("time,"));
    assert!(report.join("area_px.svg").is_file() && report.join("cv_pct.svg").is_file());
    assert!(report.join("step_2_contour.pgm").is_file());
}

#[test]
fn failed_scan_gives_exit_one_and_lists_it() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("series.json"), SERIES).unwrap();
    assert!(
        sonoscaffold(&["phantom", "--spec", "series.json", "--out", "."], dir.path())
            .status
            .success()
    );
    let config = r#"{
        "inputs": [
            { "path": "phantom_000.pgm", "label": "WEEK 0" },
            { "path": "nope.pgm", "label": "WEEK 4" },
            { "path": "phantom_001.pgm", "label": "WEEK 8" }
        ],
        "crop": { "x": 0, "y": 0, "w": 160, "h": 100 },
        "roi-size": { "w": 40, "h": 20 }
    }"#;
    std::fs::write(dir.path().join("c.json"), config).unwrap();
    let out = sonoscaffold(&["analyze", "--config", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("WEEK 4") && stderr.contains("nope.pgm"), "{stderr}");
    let csv = std::fs::read_to_string(dir.path().join("report/features.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn bad_invocations_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = sonoscaffold(&["analyze", "--config", "absent.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(
        dir.path().join("c.json"),
        r#"{ "inputs": [], "crop": { "x": 0, "y": 0, "w": 1, "h": 1 }, "bogus": 1 }"#,
    )
    .unwrap();
    let out = sonoscaffold(&["analyze", "--config", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(
        dir.path().join("ok.json"),
        r#"{ "inputs": [], "crop": { "x": 0, "y": 0, "w": 1, "h": 1 } }"#,
    )
    .unwrap();
    let out = sonoscaffold(&["analyze", "--config", "ok.json", "--chart", "brightness"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("brightness"));

    std::fs::write(dir.path().join("bad.json"), r#"{ "width": 10 }"#).unwrap();
    let out = sonoscaffold(&["phantom", "--spec", "bad.json", "--out", "x"], dir.path());
    assert!(!out.status.success());

    let out = sonoscaffold(&["frobnicate"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn bundled_sample_files_run() {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let spec = data.join("phantom_series.json");
    let scans = dir.path().join("scans");
    let out = sonoscaffold(
        &[
            "phantom",
            "--spec",
            spec.to_str().unwrap(),
            "--out",
            scans.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::copy(data.join("analyze.json"), dir.path().join("analyze.json")).unwrap();
    let out = sonoscaffold(&["analyze", "--config", "analyze.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("report/features.csv")).unwrap();
    assert_eq!(csv.lines().nth(4).unwrap().split(',').next(), Some("WEEK 12"));
    assert!(dir.path().join("report/controls.csv").is_file());
}
