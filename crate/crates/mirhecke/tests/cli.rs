//! End-to-end checks of the command-line front end: exit codes, report files,
//! determinism, config handling, and the atlas cache life cycle.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mirhecke"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mirhecke-cli-{}-{}", name, std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn strip_timing(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains("elapsed_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn relations_pass_with_exit_zero() {
    let out = run(&["relations", "--n", "3"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    for rel in ["rel1", "rel2", "rel3", "rel4", "rel5", "rel6", "nrel7"] {
        assert!(text.contains(rel), "report must mention {}", rel);
    }
    assert!(!text.contains("\"fail\""));
}

#[test]
fn dims_reports_209() {
    let out = run(&["dims", "--n", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("dim R_4 = 209"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = run(&["no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_n_is_usage_error() {
    let out = run(&["relations", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["center", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_guard_is_usage_error() {
    let out = run(&["convolution", "--n", "4", "--q", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn unwritable_output_is_usage_error() {
    let out = run(&["dims", "--n", "2", "--out", "/proc/no-such-dir/x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tmpdir("det");
    let mut texts = Vec::new();
    for pass in 0..2 {
        let sub = dir.join(format!("run{}", pass));
        let out = run(&[
            "cross-validate",
            "--n",
            "2",
            "--q",
            "3",
            "--seed",
            "99",
            "--out",
            sub.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let report = std::fs::read_to_string(sub.join("report_cross-validate.json")).unwrap();
        texts.push(strip_timing(&report));
    }
    assert_eq!(texts[0], texts[1]);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn atlas_cache_roundtrip_via_cli() {
    let dir = tmpdir("cache");
    let cache = dir.join("cache");
    let out1 = run(&[
        "convolution",
        "--n",
        "3",
        "--q",
        "2",
        "--cache",
        cache.to_str().unwrap(),
        "--out",
        dir.join("a").to_str().unwrap(),
    ]);
    assert!(
        out1.status.success(),
        "{}",
        String::from_utf8_lossy(&out1.stderr)
    );
    assert!(cache.join("atlas_n3_q2.bin").exists());
    assert!(cache.join("atlas_n3_q2.json").exists());
    let out2 = run(&[
        "convolution",
        "--n",
        "3",
        "--q",
        "2",
        "--cache",
        cache.to_str().unwrap(),
        "--out",
        dir.join("b").to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert!(String::from_utf8_lossy(&out2.stdout).contains("loaded from cache"));
    // identical constants either way
    let csv_a = std::fs::read_to_string(dir.join("a/constants_n3_q2.csv")).unwrap();
    let csv_b = std::fs::read_to_string(dir.join("b/constants_n3_q2.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    // corrupt cache rebuilds
    std::fs::write(cache.join("atlas_n3_q2.bin"), b"junk").unwrap();
    let out3 = run(&[
        "convolution",
        "--n",
        "3",
        "--q",
        "2",
        "--cache",
        cache.to_str().unwrap(),
        "--out",
        dir.join("c").to_str().unwrap(),
    ]);
    assert!(out3.status.success());
    assert!(!String::from_utf8_lossy(&out3.stdout).contains("loaded from cache"));
    let csv_c = std::fs::read_to_string(dir.join("c/constants_n3_q2.csv")).unwrap();
    assert_eq!(csv_a, csv_c);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tmpdir("config");
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "n=4\nseed=17\n# comment line\n").unwrap();
    // config supplies n=4; the flag overrides down to 2
    let out = run(&["dims", "--config", cfg.to_str().unwrap(), "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("dim R_2 = 7"));
    // config alone
    let out = run(&["dims", "--config", cfg.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("dim R_4 = 209"));
    assert!(out.status.success());
    // malformed config is a usage error
    std::fs::write(&cfg, "nonsense line\n").unwrap();
    let out = run(&["dims", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cellular_search_emits_certificates() {
    let dir = tmpdir("certs");
    let out = run(&[
        "cellular-search",
        "--n",
        "2",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let cert_path = dir.join("certificate_n2_-2.json");
    assert!(cert_path.exists(), "certificate file written");
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["q_independent"], serde_json::Value::Bool(true));
    assert!(cert["verification_hash"].as_str().unwrap().len() == 64);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn shape_validation() {
    let out = run(&["cellular-search", "--n", "3", "--shape", "[[1],[1,1]]"]);
    assert_eq!(out.status.code(), Some(2), "column-family shape rejected");
    let out = run(&["cellular-search", "--n", "3", "--shape", "not json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["cellular-search", "--n", "3", "--shape", "[[2],[2]]"]);
    assert_eq!(out.status.code(), Some(2), "size mismatch rejected");
}

#[test]
fn fock_suite_runs() {
    let out = run(&["fock", "--N", "5"]);
    assert!(out.status.success());
    let out = run(&["fock", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn irreps_dump_written() {
    let dir = tmpdir("irreps");
    let out = run(&["irreps", "--n", "2", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    for name in ["irreps_mirabolic(2).json", "irreps_cyclotomic(2).json"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let dumps: serde_json::Value = serde_json::from_str(&text).unwrap();
        let first = &dumps.as_array().unwrap()[0];
        assert!(first["label"].is_array());
        assert!(first["generators"]["T1"].is_array());
    }
    let _ = std::fs::remove_dir_all(&dir);
}
