#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypcascade"));
    cmd.env_remove("SOURCE_DATE_EPOCH");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub const POLICIES: [&str; 4] = ["random", "cw", "ccw", "alt"];

/// Golden outputs: file name and the arguments producing it (the output
/// path is appended).
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    for policy in POLICIES {
        for model in ["halfplane", "disk"] {
            cases.push((
                format!("plot-{policy}-{model}.svg"),
                [
                    "plot", "--c", "1", "--lambda", "2", "--t", "2", "--seed", "3", "--path-dt", "0.05", "--policy",
                    policy, "--model", model, "--labels",
                ]
                .map(String::from)
                .to_vec(),
            ));
        }
    }
    cases.push((
        "analyze-c1-lambda2.csv".into(),
        ["analyze", "--c", "1", "--lambda", "2", "--t-max", "5", "--dt", "0.25"].map(String::from).to_vec(),
    ));
    cases.push((
        "analyze-c1-lambda3.csv".into(),
        ["analyze", "--c", "1", "--lambda", "3", "--t-max", "5", "--dt", "0.25"].map(String::from).to_vec(),
    ));
    cases.push((
        "splinter-k2.csv".into(),
        ["splinter", "--k", "2", "--c", "1", "--lambda", "2", "--t-max", "3", "--dt", "0.25"]
            .map(String::from)
            .to_vec(),
    ));
    cases.push((
        "archive-seed7.json".into(),
        ["simulate", "--c", "1", "--lambda", "1", "--t", "1", "--reps", "5", "--seed", "7"]
            .map(String::from)
            .to_vec(),
    ));
    cases
}

/// Runs one golden case into `dir`, returning the produced bytes.
pub fn produce(dir: &Path, name: &str, args: &[String]) -> Vec<u8> {
    let out = dir.join(name);
    let o = bin().args(args).arg("--out").arg(&out).output().expect("binary runs");
    assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(&out).expect("output written")
}
