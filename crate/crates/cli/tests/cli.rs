//! End-to-end checks against the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gateswitch"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn bounds_match_the_worked_example() {
    let text = stdout(&["bounds", "-N", "8", "-y", "1,4,6,7"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["lower"], 8);
    assert_eq!(json["upper"], 11);
    assert_eq!(json["left"], 1);
    assert_eq!(json["right"], 3);
    assert_eq!(json["distances"], serde_json::json!([1, 4, 2, 1]));
}

#[test]
fn bounds_quiet_prints_the_pair() {
    assert_eq!(
        stdout(&["--quiet", "bounds", "-N", "4", "-y", "1,2,3"]),
        "4 6\n"
    );
    assert_eq!(
        stdout(&["--quiet", "bounds", "-N", "2", "-y", "1"]),
        "1 1\n"
    );
}

#[test]
fn construct_reports_sequence_and_tally() {
    let text = stdout(&["construct", "-N", "8", "-y", "1,4,6,7"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["gate_switches"]["total"], 11);
    assert_eq!(json["phase_one_endpoint"], "3 4 5 2 6 1 8 7");
    assert_eq!(json["permutations"].as_array().unwrap().len(), 29);
    assert_eq!(json["events"].as_array().unwrap().len(), 28);

    assert_eq!(
        stdout(&["--quiet", "construct", "-N", "2", "-y", "1"]),
        "1\n"
    );
    assert_eq!(
        stdout(&["--quiet", "construct", "-N", "5", "-y", "2"]),
        "2\n"
    );
}

#[test]
fn diameter_with_flags() {
    let text = stdout(&["diameter", "-c", "1,3,2,1,1", "--bounds", "--closed-form"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let d = json["diameter"].as_u64().unwrap();
    assert!((8..=11).contains(&d));
    assert_eq!(json["bounds"], serde_json::json!([8, 11]));
    assert!(json["closed_form"].is_null());

    assert_eq!(stdout(&["--quiet", "diameter", "-c", "1,2,1"]), "3\n");
    assert_eq!(stdout(&["--quiet", "diameter", "-c", "1,1,1,1"]), "6\n");

    let text = stdout(&["diameter", "-c", "2,3", "--oracle", "--closed-form"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["diameter"], 2);
    assert_eq!(json["closed_form"], 2);
    assert_eq!(json["oracle_all_pairs"], 2);
}

#[test]
fn hrep_square_fixture() {
    let text = stdout(&["hrep", "-c", "1,2,1"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["row_count"], 14);
    assert_eq!(json["equality_rhs"], 8);
    let rows = json["text"].as_array().unwrap();
    assert_eq!(rows[0], "x(1,2,3,4) = 8");
    assert!(rows.iter().any(|r| r == "x(1) >= 1"));
}

#[test]
fn oracle_subcommands() {
    assert_eq!(
        stdout(&[
            "--quiet",
            "oracle",
            "min-switches",
            "-N",
            "4",
            "-y",
            "1,2,3"
        ]),
        "6\n"
    );
    assert_eq!(stdout(&["--quiet", "oracle", "count", "-N", "5"]), "768\n");
    assert_eq!(
        stdout(&["--quiet", "oracle", "enumerate", "-N", "3", "--count-only"]),
        "2\n"
    );
    let text = stdout(&["oracle", "enumerate", "-N", "3"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        json["switch_positions"],
        serde_json::json!(["1 2 1", "2 1 2"])
    );
    assert_eq!(
        stdout(&["--quiet", "oracle", "all-pairs", "-c", "2,2"]),
        "2\n"
    );
}

#[test]
fn spectrum_for_n4() {
    let text = stdout(&["diameter-spectrum", "-N", "4"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let achieved: Vec<u64> = json["achieved"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["diameter"].as_u64().unwrap())
        .collect();
    assert_eq!(achieved, vec![1, 2, 3, 6]);
    assert_eq!(json["missing"], serde_json::json!([4, 5]));

    let text = stdout(&["--quiet", "diameter-spectrum", "-N", "2"]);
    assert_eq!(text, "1\n");
}

#[test]
fn ksets_pipeline_with_files() {
    let dir = std::env::temp_dir().join(format!("gateswitch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gon: PathBuf = dir.join("gon.txt");

    let text = stdout(&["gon", "-k", "2", "-N", "5", "-o", gon.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["f_k"], 5);

    let text = stdout(&["ksets", "--points", gon.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["ksets"][1]["k"], 2);
    assert_eq!(json["ksets"][1]["total"], 5);

    let out = run(&[
        "--quiet",
        "ksets",
        "--points",
        gon.to_str().unwrap(),
        "-L",
        "2",
        "-R",
        "2",
        "--sandwich",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "pass\n");

    let csv = stdout(&[
        "--format",
        "csv",
        "ksets",
        "--points",
        gon.to_str().unwrap(),
    ]);
    assert!(csv.starts_with("k,left,right,total\n"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn perturb_repairs_a_degenerate_file() {
    let dir = std::env::temp_dir().join(format!("gateswitch-perturb-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "0 0\n1 0\n2 1\n1 1\n").unwrap();

    let fixed = dir.join("fixed.txt");
    let out = run(&[
        "perturb",
        "--points",
        bad.to_str().unwrap(),
        "-q",
        "1000",
        "-o",
        fixed.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&["ksets", "--points", fixed.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["n"], 4);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = run(&["--quiet", "verify", "theorem1", "--max-n", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "pass\n");

    let out = run(&["--quiet", "verify", "bridge", "--max-n", "5"]);
    assert!(out.status.success());

    let out = run(&["--quiet", "verify", "ksets", "--max-n", "6", "--seeds", "5"]);
    assert!(out.status.success());

    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_resource_exit_codes() {
    let out = run(&["bounds", "-N", "4", "-y", "9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["bounds", "-N", "4"]);
    assert_eq!(out.status.code(), Some(2), "clap missing-argument error");

    let out = run(&[
        "diameter",
        "-c",
        "1,1,1,1,1,1,1,1,1,1,1",
        "--vertex-budget",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["oracle", "min-switches", "-N", "12", "-y", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["--format", "csv", "bounds", "-N", "4", "-y", "1"]);
    assert_eq!(out.status.code(), Some(2), "csv unsupported here");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = stdout(&["construct", "-N", "6", "-y", "2,3"]);
    let b = stdout(&["construct", "-N", "6", "-y", "2,3"]);
    assert_eq!(a, b);
    let a = stdout(&["diameter-spectrum", "-N", "5"]);
    let b = stdout(&["diameter-spectrum", "-N", "5"]);
    assert_eq!(a, b);
}

#[test]
fn env_var_sets_the_vertex_budget() {
    let out = bin()
        .args(["diameter", "-c", "1,1,1,1,1,1,1,1"])
        .env("GATESWITCH_BUDGET", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));

    // An explicit flag overrides the environment.
    let out = bin()
        .args([
            "--quiet",
            "diameter",
            "-c",
            "1,2,1",
            "--vertex-budget",
            "100",
        ])
        .env("GATESWITCH_BUDGET", "1")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}
