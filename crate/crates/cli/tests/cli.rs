//! End-to-end checks of the command surface: values, determinism, exit codes.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_instanton"))
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("instanton-cli-test-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn asset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets").join(name)
}

#[test]
fn zinst_rank_one_closed_form() {
    let dir = tmpdir("zinst");
    let out = dir.join("z");
    let status = bin()
        .args(["--out"])
        .arg(&out)
        .args(["zinst", "--r", "1", "--eps", "1", "--lambda", "0.5", "--nmax", "8"])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.with_extension("json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let z = v["z_inst"].as_f64().unwrap();
    assert!(
        (z - 0.25f64.exp()).abs() <= 1e-9,
        "z_inst = {z} vs {}",
        0.25f64.exp()
    );
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tmpdir("determinism");
    let out1 = dir.join("a");
    let out2 = dir.join("b");
    for (out, threads) in [(&out1, "1"), (&out2, "4")] {
        let status = bin()
            .args(["--threads", threads, "--out"])
            .arg(out)
            .args(["zinst", "--a", "0.9,-0.9", "--eps", "0.31", "--lambda", "0.6", "--nmax", "6"])
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(out1.with_extension("json")).unwrap();
    let b = std::fs::read(out2.with_extension("json")).unwrap();
    assert_eq!(a, b, "outputs differ across thread counts");
}

#[test]
fn periods_csv_has_header_and_rows() {
    let dir = tmpdir("periods");
    let out = dir.join("p");
    let status = bin()
        .args(["--out"])
        .arg(&out)
        .args(["periods", "--curve"])
        .arg(asset("fig2.json"))
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(text.starts_with("# config-hash:"));
    assert!(text.contains("i,a_i,a_dual_i"));
    assert_eq!(text.lines().count(), 3 + 3, "3 header lines + 3 rows");
}

#[test]
fn usage_errors_exit_two() {
    // stochastic overlay without a seed
    let dir = tmpdir("usage");
    let out = dir.join("u");
    let status = bin()
        .args(["--out"])
        .arg(&out)
        .args(["limitshape", "--curve"])
        .arg(asset("fig2.json"))
        .args(["--mcmc-eps", "0.1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // r > 1 without explicit a
    let status = bin()
        .args(["--out"])
        .arg(&out)
        .args(["zinst", "--r", "2", "--eps", "0.5", "--lambda", "0.2"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_three_with_sidecar() {
    let dir = tmpdir("numerical");
    let out = dir.join("n");
    // a on the pole locus: a1 - a2 = 2 = 4 * 0.5
    let status = bin()
        .args(["--out"])
        .arg(&out)
        .args(["zinst", "--a", "1.0,-1.0", "--eps", "0.5", "--lambda", "0.2"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    let diag = std::fs::read_to_string(out.with_extension("diag.json")).unwrap();
    assert!(diag.contains("pole"), "diagnostic: {diag}");
}

#[test]
fn limitshape_emits_profile_and_intercepts() {
    let dir = tmpdir("limitshape");
    let out = dir.join("ls");
    let status = bin()
        .args(["--out"])
        .arg(&out)
        .args(["limitshape", "--curve"])
        .arg(asset("fig2.json"))
        .args(["--grid", "300"])
        .status()
        .unwrap();
    assert!(status.success());
    let json = std::fs::read_to_string(out.with_extension("json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-5);
    assert!(out.with_extension("csv").exists());
    assert!(out.with_extension("svg").exists());
}
